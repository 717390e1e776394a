#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "loglift/lift.hpp"

namespace loglift {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

// A random integer prime to p with the given number of base-p digits.
inline mpz_class random_unit_integer(long p, Rng& rng, long digits = 12) {
  mpz_class u = uniform(rng, 1, p - 1), power = p;
  for (long i = 1; i < digits; ++i, power *= p) u += power * uniform(rng, 0, p - 1);
  return rng() % 2 ? u : mpz_class(-u);
}

inline Element random_unit(const Field& F, Rng& rng) { return Element::integer(F, random_unit_integer(F.prime(), rng)); }

// Exact p^v u with v uniform in [vmin, vmax].
inline Element random_nonzero(const Field& F, Rng& rng, long vmin, long vmax) {
  long v = uniform(rng, vmin, vmax);
  Element u = random_unit(F, rng);
  if (v == 0) return u;
  Element pv = Element::integer(F, F.prime()).pow(v);
  return pv * u;
}

inline std::vector<Element> random_torus(const Field& F, std::size_t n, Rng& rng, long vmin = -2, long vmax = 2) {
  std::vector<Element> t;
  for (std::size_t i = 0; i < n; ++i) t.push_back(random_nonzero(F, rng, vmin, vmax));
  return t;
}

inline std::vector<Element> random_unit_torus(const Field& F, std::size_t n, Rng& rng) {
  return random_torus(F, n, rng, 0, 0);
}

inline Matrix random_unitriangular(const Field& F, std::size_t n, Rng& rng, bool upper = true, long bound = 3) {
  Matrix m = Matrix::identity(F, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (upper ? i < j : i > j) m(i, j) = Element::integer(F, uniform(rng, -bound, bound));
  return m;
}

// Block diagonal element of the Levi: lower * diag * upper in every block.
inline Matrix random_levi(const GLnContext& ctx, const Field& F, Rng& rng, long vmin = -2, long vmax = 2) {
  Matrix l(F, ctx.n(), ctx.n());
  for (std::size_t b = 0; b < ctx.num_blocks(); ++b) {
    std::size_t s = ctx.block_start(b), m = ctx.block_size(b);
    Matrix d = Matrix::diagonal(F, random_torus(F, m, rng, vmin, vmax));
    l.set_block(s, s, random_unitriangular(F, m, rng, false) * d * random_unitriangular(F, m, rng, true));
  }
  return l;
}

inline Matrix random_unipotent(const GLnContext& ctx, const Field& F, Rng& rng, long bound = 5) {
  Matrix u = Matrix::identity(F, ctx.n());
  for (const Root& r : ctx.unipotent_roots()) u(r.i, r.j) = Element::integer(F, uniform(rng, -bound, bound));
  return u;
}

inline Matrix random_parabolic(const GLnContext& ctx, const Field& F, Rng& rng) {
  return random_unipotent(ctx, F, rng) * random_levi(ctx, F, rng);
}

// Element of SL_m written as a product of random transvections with
// coefficients of valuation in [vmin, vmax].
inline Matrix random_special(const Field& F, std::size_t m, Rng& rng, long vmin = -1, long vmax = 2) {
  Matrix h = Matrix::identity(F, m);
  if (m < 2) return h;
  for (int k = 0; k < 6; ++k) {
    std::size_t i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(m) - 1));
    std::size_t j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(m) - 2));
    if (j >= i) ++j;
    h = h * (Matrix::identity(F, m) + Matrix::elementary(F, m, i, j, random_nonzero(F, rng, vmin, vmax)));
  }
  return h;
}

// Block diagonal with an SL element in every block.
inline Matrix random_special_levi(const GLnContext& ctx, const Field& F, Rng& rng) {
  Matrix l = Matrix::identity(F, ctx.n());
  for (std::size_t b = 0; b < ctx.num_blocks(); ++b) {
    std::size_t s = ctx.block_start(b);
    l.set_block(s, s, random_special(F, ctx.block_size(b), rng));
  }
  return l;
}

// Unimodular integer matrix.
inline IntMatrix random_unimodular(std::size_t n, Rng& rng) {
  IntMatrix a(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) a[i][i] = rng() % 2 ? 1 : -1;
  for (int k = 0; k < static_cast<int>(3 * n); ++k) {
    std::size_t i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    std::size_t j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    if (i == j) continue;
    long c = uniform(rng, -2, 2);
    for (std::size_t col = 0; col < n; ++col) a[i][col] += c * a[j][col];
  }
  return a;
}

// A logarithm compatible with every module produced by random_module: any
// basis on a Borel, and block-constant branches in standard coordinates
// otherwise.
inline TorusLogarithm random_log(const GLnContext& ctx, const Field& F, Rng& rng) {
  std::size_t n = ctx.n();
  if (ctx.is_borel()) {
    std::vector<Element> branches;
    for (std::size_t i = 0; i < n; ++i) branches.push_back(random_nonzero(F, rng, 0, 2));
    return TorusLogarithm(F, random_unimodular(n, rng), branches);
  }
  std::vector<Element> per_block;
  for (std::size_t b = 0; b < ctx.num_blocks(); ++b) per_block.push_back(random_nonzero(F, rng, 0, 2));
  std::vector<Element> branches;
  for (std::size_t i = 0; i < n; ++i) branches.push_back(per_block[ctx.block_of(i)]);
  return TorusLogarithm::standard(F, branches);
}

inline FdPModule standard_module(const GLnContext& ctx, const Field& F) {
  std::map<Root, Matrix> act;
  for (const Root& r : ctx.parabolic_roots())
    act.emplace(r, Matrix::elementary(F, ctx.n(), r.i, r.j, Element::one(F)));
  return FdPModule(ctx, F, ctx.n(), act);
}

// x -> sum_b tr_b(x) (lambda_b + N_b) with commuting nilpotents N_b; it kills
// the derived subalgebra of p.
inline FdPModule block_trace_module(const GLnContext& ctx, const Field& F, std::size_t d, Rng& rng) {
  Matrix j(F, d, d);
  for (std::size_t i = 0; i + 1 < d; ++i) j(i, i + 1) = Element::one(F);
  Matrix j2 = j * j;
  std::vector<Matrix> c;
  for (std::size_t b = 0; b < ctx.num_blocks(); ++b) {
    Matrix cb = Element::integer(F, uniform(rng, -2, 2)) * Matrix::identity(F, d);
    if (d > 1) cb += Element::integer(F, uniform(rng, -2, 2)) * j + Element::integer(F, uniform(rng, -2, 2)) * j2;
    c.push_back(cb);
  }
  std::map<Root, Matrix> act;
  for (std::size_t i = 0; i < ctx.n(); ++i) act.emplace(Root{i, i}, c[ctx.block_of(i)]);
  return FdPModule(ctx, F, d, act);
}

// V tensor W in a random basis, where V is trivial, standard, dual standard or
// (for n = 2) standard tensor standard, and W is a sum of block trace modules.
inline FdPModule random_module(const GLnContext& ctx, const Field& F, Rng& rng, std::size_t max_dim = 6) {
  std::size_t n = ctx.n();
  std::vector<FdPModule> bases{trivial_module(ctx, F, false)};
  if (n <= max_dim) {
    bases.push_back(standard_module(ctx, F));
    bases.push_back(dual_module(standard_module(ctx, F)));
  }
  if (n * n <= max_dim) bases.push_back(tensor_product(standard_module(ctx, F), standard_module(ctx, F)));
  FdPModule v = bases[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(bases.size()) - 1))];
  std::size_t room = max_dim / v.dim();
  std::size_t d1 = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(std::min<std::size_t>(room, 3))));
  FdPModule w = block_trace_module(ctx, F, d1, rng);
  if (room > d1 && rng() % 2)
    w = direct_sum(w, block_trace_module(ctx, F, static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(room - d1))), rng));
  FdPModule m = tensor_product(v, w);
  Matrix s = random_unitriangular(F, m.dim(), rng, false, 2) * random_unitriangular(F, m.dim(), rng, true, 2);
  return conjugate(m, s);
}

struct CommutingFamily {
  std::vector<Matrix> family;
  std::map<std::vector<long>, std::size_t> expected;  // weight -> multiplicity
};

// Block diagonal lambda_k + N_k with commuting nilpotent N_k, in a random basis.
inline CommutingFamily random_commuting_family(const Field& F, Rng& rng, std::size_t max_dim = 6) {
  std::size_t r = static_cast<std::size_t>(uniform(rng, 1, 3));
  std::size_t left = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(max_dim)));
  std::vector<std::size_t> sizes;
  while (left > 0) {
    std::size_t s = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(left)));
    sizes.push_back(s);
    left -= s;
  }
  std::size_t dim = 0;
  for (auto s : sizes) dim += s;
  CommutingFamily out;
  std::vector<std::vector<long>> weights;
  while (weights.size() < sizes.size()) {
    std::vector<long> w;
    for (std::size_t i = 0; i < r; ++i) w.push_back(uniform(rng, -3, 3));
    if (std::find(weights.begin(), weights.end(), w) == weights.end()) weights.push_back(w);
  }
  std::vector<Matrix> fam(r, Matrix(F, dim, dim));
  std::size_t off = 0;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    std::size_t s = sizes[k];
    Matrix j(F, s, s);
    for (std::size_t i = 0; i + 1 < s; ++i) j(i, i + 1) = Element::one(F);
    Matrix j2 = j * j;
    for (std::size_t i = 0; i < r; ++i) {
      Matrix blk = Element::integer(F, weights[k][i]) * Matrix::identity(F, s) +
                   Element::integer(F, uniform(rng, -2, 2)) * j + Element::integer(F, uniform(rng, -2, 2)) * j2;
      fam[i].set_block(off, off, blk);
    }
    out.expected[weights[k]] += s;
    off += s;
  }
  Matrix sm = random_unitriangular(F, dim, rng, false, 3) * random_unitriangular(F, dim, rng, true, 3);
  Matrix sinv = inverse(sm);
  for (auto& a : fam) out.family.push_back(sm * a * sinv);
  return out;
}

}  // namespace loglift
