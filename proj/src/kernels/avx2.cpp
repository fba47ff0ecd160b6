// AVX2 replicas of the scalar kernels. Every expression follows the operand
// order in scalar_math.hpp so results match the scalar reference bit for bit.

#include <immintrin.h>

#include <cstddef>

#include "lerc/errors.hpp"
#include "lerc/kernels/kernels.hpp"
#include "lerc/kernels/scalar_math.hpp"

namespace lerc::kernels::avx2 {
namespace {

inline __m256d set1(double v) { return _mm256_set1_pd(v); }

inline __m256d negate(__m256d v) {
  return _mm256_xor_pd(v, _mm256_set1_pd(-0.0));
}

inline __m256d select(__m256d mask, __m256d if_true, __m256d if_false) {
  return _mm256_blendv_pd(if_false, if_true, mask);
}

inline __m256d gt(__m256d a, __m256d b) {
  return _mm256_cmp_pd(a, b, _CMP_GT_OQ);
}

inline __m256d ge(__m256d a, __m256d b) {
  return _mm256_cmp_pd(a, b, _CMP_GE_OQ);
}

inline __m256d le(__m256d a, __m256d b) {
  return _mm256_cmp_pd(a, b, _CMP_LE_OQ);
}

inline void store_mask(__m256d mask, std::uint8_t* out) {
  const int bits = _mm256_movemask_pd(mask);
  for (int k = 0; k < 4; ++k) out[k] = static_cast<std::uint8_t>((bits >> k) & 1);
}

__m256d riccati_root(__m256d a, __m256d c2, __m256d gamma) {
  const __m256d one = set1(1.0);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d g2 = _mm256_mul_pd(gamma, gamma);
  const __m256d g2c2 = _mm256_mul_pd(g2, c2);
  const __m256d aa = _mm256_mul_pd(a, a);
  const __m256d B = _mm256_sub_pd(
      _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(g2, aa), g2), g2c2), one);
  const __m256d C = negate(_mm256_mul_pd(g2, _mm256_sub_pd(g2c2, one)));
  const __m256d disc =
      _mm256_sub_pd(_mm256_mul_pd(B, B), _mm256_mul_pd(set1(4.0), C));
  const __m256d disc_ok = ge(disc, zero);
  const __m256d root = _mm256_sqrt_pd(disc);
  const __m256d p_neg = _mm256_mul_pd(set1(0.5), _mm256_sub_pd(root, B));
  const __m256d p_pos = _mm256_div_pd(_mm256_mul_pd(set1(-2.0), C),
                                      _mm256_add_pd(B, root));
  const __m256d P0 = select(le(B, zero), p_neg, p_pos);
  const __m256d X0 = _mm256_sub_pd(_mm256_add_pd(P0, g2c2), one);
  const __m256d ok0 =
      _mm256_and_pd(disc_ok, _mm256_and_pd(gt(P0, zero), gt(X0, zero)));
  const __m256d P = _mm256_div_pd(
      one, _mm256_add_pd(_mm256_div_pd(aa, X0), _mm256_div_pd(one, g2)));
  const __m256d X = _mm256_sub_pd(_mm256_add_pd(P, g2c2), one);
  const __m256d ok =
      _mm256_and_pd(ok0, _mm256_and_pd(gt(P, zero), gt(X, zero)));
  return select(ok, P, set1(scalar::kNaN));
}

// past_cost_increment with broadcast P, g2, X.
inline __m256d past_cost_increment(__m256d P, __m256d g2, __m256d X,
                                   __m256d x_hat, __m256d y) {
  const __m256d innov =
      _mm256_add_pd(_mm256_mul_pd(P, x_hat), _mm256_mul_pd(g2, y));
  const __m256d head = _mm256_sub_pd(
      negate(_mm256_mul_pd(P, _mm256_mul_pd(x_hat, x_hat))),
      _mm256_mul_pd(g2, _mm256_mul_pd(y, y)));
  return _mm256_add_pd(head,
                       _mm256_div_pd(_mm256_mul_pd(innov, innov), X));
}

}  // namespace

double sum_squares(std::span<const double> values) {
  const std::size_t n = values.size();
  const std::size_t body = n - n % 4;
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += 4) {
    const __m256d v = _mm256_loadu_pd(values.data() + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  for (std::size_t i = body; i < n; ++i) {
    lanes[i - body] = lanes[i - body] + values[i] * values[i];
  }
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

void riccati_roots(std::span<const double> a, std::span<const double> gamma,
                   double c, std::span<double> P) {
  const std::size_t n = a.size();
  require(gamma.size() == n && P.size() == n, "riccati_roots: length mismatch");
  const std::size_t body = n - n % 4;
  const __m256d c2 = set1(c * c);
  for (std::size_t i = 0; i < body; i += 4) {
    const __m256d r = riccati_root(_mm256_loadu_pd(a.data() + i), c2,
                                   _mm256_loadu_pd(gamma.data() + i));
    _mm256_storeu_pd(P.data() + i, r);
  }
  for (std::size_t i = body; i < n; ++i) {
    P[i] = scalar::riccati_root(a[i], c, gamma[i]);
  }
}

void certify_points(std::span<const double> a, std::span<const double> gamma,
                    const CertifyColumns& out) {
  const std::size_t n = a.size();
  require(gamma.size() == n && out.P.size() == n && out.p_feasible.size() == n &&
              out.curvature_ok.size() == n && out.negativity_ok.size() == n,
          "certify_points: length mismatch");
  const std::size_t body = n - n % 4;
  const __m256d one = set1(1.0);
  const __m256d zero = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += 4) {
    const __m256d g = _mm256_loadu_pd(gamma.data() + i);
    const __m256d P = riccati_root(_mm256_loadu_pd(a.data() + i), one, g);
    const __m256d g2 = _mm256_mul_pd(g, g);
    const __m256d feasible = gt(P, one);

    const __m256d radicand = _mm256_sub_pd(g2, P);
    const __m256d slack =
        _mm256_mul_pd(set1(1e-12), select(gt(g2, one), g2, one));
    const __m256d in_domain = ge(radicand, negate(slack));
    const __m256d root =
        _mm256_sqrt_pd(select(gt(radicand, zero), radicand, zero));

    const __m256d curvature = gt(
        P, _mm256_sub_pd(_mm256_mul_pd(set1(2.0), g), one));

    const __m256d pm1 = _mm256_sub_pd(P, one);
    const __m256d f = _mm256_sub_pd(pm1, _mm256_mul_pd(set1(2.0), root));
    const __m256d lhs = _mm256_mul_pd(
        _mm256_sub_pd(_mm256_add_pd(P, _mm256_mul_pd(set1(2.0), g2)), one),
        _mm256_mul_pd(f, f));
    const __m256d q = _mm256_add_pd(P, one);
    const __m256d rhs = _mm256_mul_pd(
        pm1, _mm256_sub_pd(_mm256_mul_pd(q, q), _mm256_mul_pd(set1(4.0), g2)));
    const __m256d negativity = ge(lhs, rhs);

    _mm256_storeu_pd(out.P.data() + i, P);
    store_mask(feasible, out.p_feasible.data() + i);
    store_mask(_mm256_and_pd(feasible, curvature), out.curvature_ok.data() + i);
    store_mask(_mm256_and_pd(feasible, _mm256_and_pd(in_domain, negativity)),
               out.negativity_ok.data() + i);
  }
  if (body < n) {
    const std::size_t rest = n - body;
    scalar::certify_points(
        a.subspan(body), gamma.subspan(body),
        CertifyColumns{out.P.subspan(body, rest),
                       out.p_feasible.subspan(body, rest),
                       out.curvature_ok.subspan(body, rest),
                       out.negativity_ok.subspan(body, rest)});
  }
}

void quadfuns(const QuadfunParams& p, std::span<const double> y,
              std::span<double> l1_next, std::span<double> lm1_next,
              std::span<double> threshold) {
  const std::size_t n = y.size();
  require(l1_next.size() == n && lm1_next.size() == n && threshold.size() == n,
          "quadfuns: length mismatch");
  const double g2s = p.gamma * p.gamma;
  const double Xs = p.P + g2s - 1.0;
  const bool first_larger = p.l1 >= p.lm1;

  const __m256d P = set1(p.P);
  const __m256d g2 = set1(g2s);
  const __m256d X = set1(Xs);
  const __m256d x_hat = set1(p.x_hat);
  const __m256d l1 = set1(p.l1);
  const __m256d lm1 = set1(p.lm1);
  const __m256d a_hat_x = _mm256_mul_pd(set1(p.a_hat), x_hat);
  const __m256d g_hat = set1(p.g_hat);
  const __m256d neg_ratio =
      negate(_mm256_div_pd(P, _mm256_sub_pd(P, set1(1.0))));

  const std::size_t body = n - n % 4;
  for (std::size_t i = 0; i < body; i += 4) {
    const __m256d yv = _mm256_loadu_pd(y.data() + i);
    const __m256d zero_branch =
        past_cost_increment(P, g2, X, _mm256_setzero_pd(), yv);
    const __m256d state_branch = past_cost_increment(P, g2, X, x_hat, yv);
    _mm256_storeu_pd(l1_next.data() + i,
                     _mm256_add_pd(l1, first_larger ? zero_branch : state_branch));
    _mm256_storeu_pd(lm1_next.data() + i,
                     _mm256_add_pd(lm1, first_larger ? state_branch : zero_branch));
    const __m256d g_y = _mm256_mul_pd(g_hat, yv);
    const __m256d next = _mm256_add_pd(_mm256_add_pd(a_hat_x, g_y), g_y);
    _mm256_storeu_pd(threshold.data() + i,
                     _mm256_mul_pd(neg_ratio, _mm256_mul_pd(next, next)));
  }
  if (body < n) {
    const std::size_t rest = n - body;
    scalar::quadfuns(p, y.subspan(body), l1_next.subspan(body, rest),
                     lm1_next.subspan(body, rest), threshold.subspan(body, rest));
  }
}

}  // namespace lerc::kernels::avx2
