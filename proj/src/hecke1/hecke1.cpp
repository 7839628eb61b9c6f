#include "eiscong/hecke1.hpp"

#include <algorithm>

#include "eiscong/error.hpp"
#include "eiscong/padic.hpp"

namespace eiscong {

namespace {

using Series = std::vector<Integer>;

Series series_mul(const Series& a, const Series& b) {
  const std::size_t n = std::min(a.size(), b.size());
  Series out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Series series_pow(const Series& a, unsigned e, std::size_t len) {
  Series out(len);
  out[0] = 1;
  for (unsigned i = 0; i < e; ++i) out = series_mul(out, a);
  return out;
}

// 1 + c sum sigma_r(n) q^n.
Series level_one_eisenstein(long c, unsigned r, std::size_t len) {
  Series out(len);
  out[0] = 1;
  for (std::size_t d = 1; d < len; ++d) {
    const Integer dr = pow(Integer(d), r);
    for (std::size_t n = d; n < len; n += d) out[n] += dr;
  }
  for (std::size_t n = 1; n < len; ++n) out[n] *= c;
  return out;
}

Series discriminant(const Series& e4, const Series& e6) {
  Series out = series_mul(series_mul(e4, e4), e4);
  const Series e6sq = series_mul(e6, e6);
  for (std::size_t n = 0; n < out.size(); ++n) {
    out[n] -= e6sq[n];
    mpz_divexact_ui(out[n].get_mpz_t(), out[n].get_mpz_t(), 1728);
  }
  return out;
}

std::uint64_t series_mod(const Integer& x, std::uint64_t m) { return reduce_mod(x, m); }

using ResidueMatrix = std::vector<std::vector<std::uint64_t>>;

ResidueMatrix reduce_matrix(const RationalMatrix& a, std::uint64_t m) {
  ResidueMatrix out(a.size(), std::vector<std::uint64_t>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a[i][j].get_den() != 1) throw ComputationError("Hecke matrix entry is not integral");
      out[i][j] = series_mod(a[i][j].get_num(), m);
    }
  }
  return out;
}

std::uint64_t inverse_unit(std::uint64_t a, std::uint64_t m) {
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), Integer(a).get_mpz_t(), Integer(m).get_mpz_t()) == 0) {
    throw ComputationError("pivot is not a unit");
  }
  return inv.get_ui();
}

// Kernel vector of a d x d matrix over Z/p^s whose reduction mod p has rank
// d - 1 and whose determinant vanishes mod p^s. Returns v with v[free] = 1.
std::pair<std::vector<std::uint64_t>, std::size_t> kernel_vector(ResidueMatrix a, std::uint64_t p, std::uint64_t m) {
  const std::size_t d = a.size();
  std::vector<std::size_t> pivot_col;
  std::vector<bool> used_col(d, false);
  std::size_t row = 0;
  for (; row + 1 < d; ++row) {
    std::size_t pr = d, pc = d;
    for (std::size_t i = row; i < d && pr == d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        if (!used_col[j] && a[i][j] % p != 0) {
          pr = i;
          pc = j;
          break;
        }
      }
    }
    if (pr == d) throw ComputationError("eigenvalue is not simple modulo p");
    std::swap(a[row], a[pr]);
    const std::uint64_t inv = inverse_unit(a[row][pc], m);
    for (auto& x : a[row]) x = mul_mod(x, inv, m);
    for (std::size_t i = 0; i < d; ++i) {
      if (i == row || a[i][pc] == 0) continue;
      const std::uint64_t f = a[i][pc];
      for (std::size_t j = 0; j < d; ++j) a[i][j] = (a[i][j] + m - mul_mod(f, a[row][j], m)) % m;
    }
    used_col[pc] = true;
    pivot_col.push_back(pc);
  }
  std::size_t free = 0;
  while (used_col[free]) ++free;
  std::vector<std::uint64_t> v(d, 0);
  v[free] = 1;
  for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = (m - a[r][free]) % m;
  return {v, free};
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q <= bound; ++q) {
    if (is_prime(q)) out.push_back(q);
  }
  return out;
}

}  // namespace

std::uint64_t sturm_bound(unsigned k, std::uint64_t level) {
  if (level == 0) throw ParameterError("sturm_bound: level must be positive");
  // index = N prod (1 + 1/q)
  Integer index(level);
  for (auto [q, e] : factorize(level)) {
    (void)e;
    index = index / q * (q + 1);
  }
  Integer num = index * k;
  Integer out;
  mpz_cdiv_q_ui(out.get_mpz_t(), num.get_mpz_t(), 12);
  return out.get_ui();
}

std::size_t dim_modular_forms(unsigned k) {
  if (k % 2 != 0) return 0;
  if (k == 2) return 0;
  return k / 12 + (k % 12 == 2 ? 0 : 1);
}

std::vector<std::vector<Integer>> miller_basis_integer(unsigned k, std::size_t precision) {
  if (k % 2 != 0 || k < 4) throw ParameterError("miller_basis: weight must be even and >= 4");
  const std::size_t len = precision + 1;
  const std::size_t dim = dim_modular_forms(k);
  const Series e4 = level_one_eisenstein(240, 3, len);
  const Series e6 = level_one_eisenstein(-504, 5, len);
  const Series delta = discriminant(e4, e6);
  std::vector<Series> rows;
  for (std::size_t j = 0; j < dim; ++j) {
    const unsigned w = k - 12 * static_cast<unsigned>(j);
    const unsigned b = w % 4 == 2 ? 1 : 0;
    const unsigned a = (w - 6 * b) / 4;
    rows.push_back(series_mul(series_mul(series_pow(delta, static_cast<unsigned>(j), len), series_pow(e4, a, len)),
                              series_pow(e6, b, len)));
  }
  for (std::size_t i = dim; i-- > 1;) {
    for (std::size_t r = 0; r < i; ++r) {
      if (rows[r].size() <= i || rows[r][i] == 0) continue;
      const Integer f = rows[r][i];
      for (std::size_t n = 0; n < len; ++n) rows[r][n] -= f * rows[i][n];
    }
  }
  return rows;
}

std::vector<QExpansion> miller_basis(unsigned k, std::size_t precision) {
  std::vector<QExpansion> out;
  std::size_t i = 0;
  for (const auto& row : miller_basis_integer(k, precision)) {
    std::vector<CycElem> coeffs;
    coeffs.reserve(row.size());
    for (const auto& c : row) coeffs.emplace_back(Rational(c));
    out.emplace_back(std::move(coeffs), static_cast<int>(k), 1, DirichletChar::trivial(1),
                     "miller_" + std::to_string(k) + "_" + std::to_string(i++));
  }
  return out;
}

RationalMatrix hecke_matrix(unsigned k, std::uint64_t n, const std::vector<std::vector<Integer>>& cusp_basis) {
  if (n == 0) throw ParameterError("hecke_matrix: n must be positive");
  const std::size_t d = cusp_basis.size();
  RationalMatrix out(d, std::vector<Rational>(d));
  const auto divs = divisors(n);
  for (std::size_t j = 0; j < d; ++j) {
    const auto& f = cusp_basis[j];
    if (f.size() < d * n + 1) throw ParameterError("hecke_matrix: insufficient precision");
    for (std::size_t m = 1; m <= d; ++m) {
      Integer acc;
      for (std::uint64_t dv : divs) {
        if (m % dv != 0) continue;
        acc += pow(Integer(dv), k - 1) * f[m * n / (dv * dv)];
      }
      out[m - 1][j] = Rational(acc);
    }
  }
  return out;
}

RationalMatrix hecke_matrix(unsigned k, std::uint64_t n) {
  const std::size_t dim = dim_modular_forms(k);
  const std::size_t d = dim == 0 ? 0 : dim - 1;
  if (d == 0) return {};
  auto basis = miller_basis_integer(k, d * n + 1);
  basis.erase(basis.begin());
  return hecke_matrix(k, n, basis);
}

RationalMatrix matrix_multiply(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t n = a.size();
  RationalMatrix out(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < n; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  }
  return out;
}

std::vector<Rational> charpoly(const RationalMatrix& a) {
  // Faddeev-LeVerrier: M_i = A M_(i-1) + c_(n-i+1) I, c_(n-i) = -tr(A M_i)/i.
  const std::size_t n = a.size();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  RationalMatrix m(n, std::vector<Rational>(n));
  for (std::size_t i = 1; i <= n; ++i) {
    m = matrix_multiply(a, m);
    for (std::size_t j = 0; j < n; ++j) m[j][j] += c[n - i + 1];
    const RationalMatrix am = matrix_multiply(a, m);
    Rational tr;
    for (std::size_t j = 0; j < n; ++j) tr += am[j][j];
    c[n - i] = -tr / Rational(static_cast<long>(i));
  }
  return c;
}

EigensystemScan eigensystems_mod(unsigned k, std::uint64_t p, unsigned s) {
  if (k % 2 != 0) throw ParameterError("eigensystems_mod: level-one weight must be even");
  if (p == 2 || !is_prime(p)) throw ParameterError("eigensystems_mod: p must be an odd prime");
  if (p > kMaxRootScanPrime) throw ParameterError("eigensystems_mod: p exceeds the root-scan limit");
  if (s == 0) throw ParameterError("eigensystems_mod: precision must be positive");
  EigensystemScan scan;
  const std::size_t dim = dim_modular_forms(k);
  if (dim <= 1) return scan;
  const std::size_t d = dim - 1;
  const std::uint64_t mod = prime_power(p, s);

  const auto primes = primes_up_to(std::max<std::uint64_t>(sturm_bound(k, 1), 13));
  auto basis = miller_basis_integer(k, d * primes.back() + 1);
  basis.erase(basis.begin());
  std::map<std::uint64_t, RationalMatrix> hecke;
  for (std::uint64_t q : primes) hecke.emplace(q, hecke_matrix(k, q, basis));

  const auto poly = charpoly(hecke.at(2));
  std::vector<Integer> ipoly;
  for (const auto& c : poly) {
    if (c.get_den() != 1) throw ComputationError("charpoly(T_2) is not integral");
    ipoly.push_back(c.get_num());
  }
  const auto eval = [&](const std::vector<Integer>& f, std::uint64_t x, std::uint64_t m) {
    std::uint64_t acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = (mul_mod(acc, x, m) + series_mod(f[i], m)) % m;
    return acc;
  };
  std::vector<Integer> deriv;
  for (std::size_t i = 1; i < ipoly.size(); ++i) deriv.push_back(ipoly[i] * static_cast<unsigned long>(i));

  std::size_t roots_found = 0;
  for (std::uint64_t r = 0; r < p; ++r) {
    if (eval(ipoly, r, p) != 0) continue;
    ++roots_found;
    if (eval(deriv, r, p) == 0) {
      scan.skipped.push_back("T_2 eigenvalue " + std::to_string(r) + " mod " + std::to_string(p) +
                             " is a repeated root; skipped");
      continue;
    }
    // Newton iteration to mod p^s.
    std::uint64_t alpha = r;
    for (unsigned it = 0; it < s; ++it) {
      const std::uint64_t fx = eval(ipoly, alpha, mod);
      const std::uint64_t dfx = eval(deriv, alpha, mod);
      alpha = (alpha + mod - mul_mod(fx, inverse_unit(dfx, mod), mod)) % mod;
    }
    ResidueMatrix a = reduce_matrix(hecke.at(2), mod);
    for (std::size_t i = 0; i < d; ++i) a[i][i] = (a[i][i] + mod - alpha) % mod;
    const auto [v, free] = kernel_vector(a, p, mod);

    EigensystemRecord rec;
    rec.weight = k;
    rec.level = 1;
    rec.p = p;
    rec.prime_label = "(" + std::to_string(p) + ", T2-" + std::to_string(r) + ")";
    rec.precision = s;
    rec.source = RecordSource::internal;
    for (std::uint64_t q : primes) {
      const ResidueMatrix tq = reduce_matrix(hecke.at(q), mod);
      std::uint64_t lambda = 0;
      for (std::size_t j = 0; j < d; ++j) lambda = (lambda + mul_mod(tq[free][j], v[j], mod)) % mod;
      rec.eigenvalues.emplace(q, Integer(lambda));
    }
    scan.records.push_back(std::move(rec));
  }
  const std::size_t outside = d - std::min(d, roots_found);
  if (outside > 0) {
    scan.skipped.push_back(std::to_string(outside) + " T_2 eigenvalue(s) outside F_" + std::to_string(p) +
                           "; skipped");
  }
  return scan;
}

unsigned record_depth(const EigensystemRecord& record, const std::set<std::uint64_t>& sigma, bool& capped) {
  const Integer mod = pow(Integer(record.p), record.precision);
  unsigned depth = record.precision;
  for (const auto& [q, lambda] : record.eigenvalues) {
    if (sigma.contains(q)) continue;
    Integer diff = lambda - 1 - pow(Integer(q), record.weight - 1);
    mpz_fdiv_r(diff.get_mpz_t(), diff.get_mpz_t(), mod.get_mpz_t());
    const Valuation v = valp(diff, static_cast<unsigned long>(record.p));
    if (v.is_finite()) depth = std::min<unsigned>(depth, static_cast<unsigned>(v.value()));
  }
  capped = depth == record.precision;
  return depth;
}

EigensystemScan depth_scan(unsigned k, std::uint64_t p, const std::set<std::uint64_t>& sigma, unsigned s_max) {
  if (!sigma.contains(p)) throw ParameterError("depth_scan: p must belong to Sigma");
  EigensystemScan scan = eigensystems_mod(k, p, s_max);
  for (auto& rec : scan.records) rec.depth = record_depth(rec, sigma, rec.capped);
  return scan;
}

}  // namespace eiscong
