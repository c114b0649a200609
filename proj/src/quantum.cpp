#include "cremona/quantum.hpp"

#include <sstream>
#include <utility>

namespace cremona {

u64 default_prime(int N) {
  if (N < 1) throw std::invalid_argument("N must be positive");
  if (N == 1) return 101;
  for (u64 p = static_cast<u64>(N) + 1;; p += static_cast<u64>(N))
    if (is_prime_u64(p)) return p;
}

QConfig make_qconfig(int N, u64 p, std::uint64_t seed) {
  if (N < 1) throw std::invalid_argument("N must be positive");
  if (!is_prime_u64(p)) throw std::invalid_argument("p is not prime");
  if ((p - 1) % static_cast<u64>(N) != 0) throw std::invalid_argument("p is not 1 mod N");
  const PrimeField f(p);
  return QConfig{N, p, root_of_unity(f, static_cast<u64>(N)), seed};
}

FpMatrix fp_identity(int n) { return FpMatrix::Identity(n, n); }

FpMatrix fp_mul(const PrimeField& f, const FpMatrix& a, const FpMatrix& b) {
  FpMatrix c = FpMatrix::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) c(i, j) = f.add(c(i, j), f.mul(a(i, k), b(k, j)));
    }
  return c;
}

FpMatrix fp_add(const PrimeField& f, const FpMatrix& a, const FpMatrix& b) {
  FpMatrix c(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.size(); ++i) c(i) = f.add(a(i), b(i));
  return c;
}

FpMatrix fp_scale(const PrimeField& f, u64 s, const FpMatrix& a) {
  FpMatrix c(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.size(); ++i) c(i) = f.mul(s, a(i));
  return c;
}

std::optional<FpMatrix> fp_inverse(const PrimeField& f, const FpMatrix& a) {
  const Eigen::Index n = a.rows();
  FpMatrix m = a, inv = FpMatrix::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = col;
    while (piv < n && m(piv, col) == 0) ++piv;
    if (piv == n) return std::nullopt;
    m.row(col).swap(m.row(piv));
    inv.row(col).swap(inv.row(piv));
    const u64 s = f.inv(m(col, col));
    for (Eigen::Index j = 0; j < n; ++j) {
      m(col, j) = f.mul(s, m(col, j));
      inv(col, j) = f.mul(s, inv(col, j));
    }
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col || m(r, col) == 0) continue;
      const u64 t = m(r, col);
      for (Eigen::Index j = 0; j < n; ++j) {
        m(r, j) = f.sub(m(r, j), f.mul(t, m(col, j)));
        inv(r, j) = f.sub(inv(r, j), f.mul(t, inv(col, j)));
      }
    }
  }
  return inv;
}

bool satisfies_commutation(const QConfig& cfg, const QPair& pair) {
  const PrimeField f(cfg.p);
  return fp_mul(f, pair.X, pair.Y) == fp_scale(f, cfg.q, fp_mul(f, pair.Y, pair.X));
}

QPair clock_shift(const QConfig& cfg, u64 lx, u64 ly) {
  const PrimeField f(cfg.p);
  const int n = cfg.N;
  QPair out{FpMatrix::Zero(n, n), FpMatrix::Zero(n, n)};
  // X Y e_i = lx ly q^{i+1} e_{i+1} and Y X e_i = lx ly q^i e_{i+1}
  u64 qi = 1;
  for (int i = 0; i < n; ++i) {
    out.X(i, i) = f.mul(lx % cfg.p, qi);
    out.Y((i + 1) % n, i) = ly % cfg.p;
    qi = f.mul(qi, cfg.q);
  }
  return out;
}

QPair random_qpair(const QConfig& cfg, std::mt19937_64& rng) {
  const PrimeField f(cfg.p);
  const QPair base = clock_shift(cfg, f.random_nonzero(rng), f.random_nonzero(rng));
  std::uniform_int_distribution<u64> entry(0, cfg.p - 1);
  for (;;) {
    FpMatrix g(cfg.N, cfg.N);
    for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = entry(rng);
    if (auto gi = fp_inverse(f, g)) return {fp_mul(f, fp_mul(f, g, base.X), *gi), fp_mul(f, fp_mul(f, g, base.Y), *gi)};
  }
}

QMap parse_qmap(std::string_view name) {
  if (name == "P" || name == "L^-1") return QMap::P;
  if (name == "L" || name == "P^-1") return QMap::PInv;
  if (name == "C") return QMap::C;
  if (name == "C^-1") return QMap::CInv;
  if (name == "I") return QMap::I;
  if (name == "I^-1") return QMap::IInv;
  throw std::invalid_argument("unknown quantum map: " + std::string(name));
}

std::string to_string(QMap m) {
  switch (m) {
    case QMap::P: return "P";
    case QMap::PInv: return "P^-1";
    case QMap::C: return "C";
    case QMap::CInv: return "C^-1";
    case QMap::I: return "I";
    case QMap::IInv: return "I^-1";
  }
  return "?";
}

QPair q_apply(QMap m, const QPair& pair, const QConfig& cfg) {
  const PrimeField f(cfg.p);
  const FpMatrix& x = pair.X;
  const FpMatrix& y = pair.Y;
  auto inv = [&](const FpMatrix& a) {
    auto r = fp_inverse(f, a);
    if (!r) throw SingularSubstitution();
    return *r;
  };
  auto mul = [&](const FpMatrix& a, const FpMatrix& b) { return fp_mul(f, a, b); };
  auto scale = [&](const FpMatrix& a) { return fp_scale(f, cfg.q, a); };
  const FpMatrix one = fp_identity(cfg.N);
  switch (m) {
    case QMap::P: return {y, scale(mul(inv(x), fp_add(f, one, y)))};
    case QMap::PInv: return {scale(mul(fp_add(f, one, x), inv(y))), x};
    case QMap::C: return {scale(mul(inv(x), y)), scale(inv(x))};
    case QMap::CInv: return {scale(inv(y)), mul(inv(y), x)};
    case QMap::I: return {scale(inv(y)), x};
    case QMap::IInv: return {y, scale(inv(x))};
  }
  throw std::logic_error("unreachable");
}

QPair q_apply(const QWord& word, QPair pair, const QConfig& cfg) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) pair = q_apply(*it, pair, cfg);
  return pair;
}

std::string to_string(QVerdict v) {
  switch (v) {
    case QVerdict::Identity: return "identity";
    case QVerdict::NotIdentity: return "not identity";
    case QVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

std::string matrix_string(const FpMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << (i ? ";" : "");
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
  }
  os << "]";
  return os.str();
}

}  // namespace

QRelationReport q_relation_check(const QWord& word, const QConfig& cfg, int trials, std::string label) {
  QRelationReport rep;
  if (label.empty()) {
    for (QMap m : word) label += (label.empty() ? "" : " ") + to_string(m);
    if (label.empty()) label = "1";
  }
  rep.word = std::move(label);
  rep.N = cfg.N;
  rep.p = cfg.p;
  rep.trials = trials;
  std::mt19937_64 rng(cfg.seed);
  int done = 0;
  for (int attempt = 0; attempt < 20 * trials && done < trials; ++attempt) {
    const QPair in = random_qpair(cfg, rng);
    QPair out;
    try {
      out = q_apply(word, in, cfg);
    } catch (const SingularSubstitution&) {
      ++rep.singular_samples;
      continue;
    }
    ++done;
    if (out == in) {
      ++rep.identity_trials;
    } else if (rep.witnesses.size() < 3) {
      rep.witnesses.push_back("X=" + matrix_string(in.X) + " Y=" + matrix_string(in.Y) + " -> X=" +
                              matrix_string(out.X) + " Y=" + matrix_string(out.Y));
    }
  }
  if (done < trials) rep.verdict = QVerdict::Inconclusive;
  else rep.verdict = rep.identity_trials == trials ? QVerdict::Identity : QVerdict::NotIdentity;
  return rep;
}

}  // namespace cremona
