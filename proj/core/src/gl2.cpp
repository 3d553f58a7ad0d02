#include "mcq/gl2.hpp"

#include <stdexcept>

namespace mcq {

Mat2 Mat2::inverse() const {
  Integer dt = det();
  if (dt == 1) return Mat2(d, -b, -c, a);
  if (dt == -1) return Mat2(-d, b, c, -a);
  throw std::domain_error("Mat2::inverse needs det = +-1");
}

void Mat2::psl_normalize() {
  bool flip = false;
  if (sgn(c) < 0)
    flip = true;
  else if (sgn(c) == 0 && sgn(a) < 0)
    flip = true;
  if (flip) {
    a = -a;
    b = -b;
    c = -c;
    d = -d;
  }
}

bool Mat2::psl_equal(const Mat2& o) const {
  Mat2 x = *this, y = o;
  x.psl_normalize();
  y.psl_normalize();
  return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
}

bool Mat2::is_identity_psl() const { return psl_equal(identity()); }

std::string Mat2::str() const {
  return "[[" + a.get_str() + "," + b.get_str() + "],[" + c.get_str() + "," +
         d.get_str() + "]]";
}

std::string Mat2::key() const {
  Mat2 x = *this;
  x.psl_normalize();
  return x.a.get_str() + "," + x.b.get_str() + "," + x.c.get_str() + "," +
         x.d.get_str();
}

Mat2 word_to_matrix(const std::string& word) {
  Mat2 m = Mat2::identity();
  for (char ch : word) {
    Mat2 g;
    switch (ch) {
      case 'L': g = Mat2::gen_L(); break;
      case 'R': g = Mat2::gen_R(); break;
      case 'S': g = Mat2::gen_S(); break;
      case 'T': g = Mat2::gen_T(); break;
      case 'U': g = Mat2::gen_U(); break;
      case 'l': g = Mat2::gen_L().inverse(); break;
      case 'r': g = Mat2::gen_R().inverse(); break;
      case 's': g = Mat2::gen_S().inverse(); break;
      case 't': g = Mat2::gen_T().inverse(); break;
      case 'u': g = Mat2::gen_U().inverse(); break;
      default:
        throw std::invalid_argument(std::string("bad word letter: ") + ch);
    }
    m = m * g;
  }
  if (m.det() != 1) throw std::logic_error("word composed to det != 1");
  return m;
}

std::string matrix_to_st_word(const Mat2& m) {
  if (m.det() != 1) throw std::domain_error("matrix_to_st_word needs det 1");
  std::string word;
  auto emit_T = [&word](const Integer& q) {
    if (sgn(q) == 0) return;
    char ch = sgn(q) > 0 ? 'T' : 't';
    Integer n = iabs(q);
    for (Integer i = 0; i < n; ++i) word += ch;
  };
  Mat2 cur = m;
  // Peel M = T^q S M' with strictly shrinking |c|; ends at +-T^b.
  while (sgn(cur.c) != 0) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), cur.a.get_mpz_t(), cur.c.get_mpz_t());
    emit_T(q);
    word += 'S';
    // M' = S * T^-q * M  (S^-1 = S in PSL2)
    Mat2 tq_inv(1, -q, 0, 1);
    cur = Mat2::gen_S() * (tq_inv * cur);
  }
  emit_T(cur.b * cur.a);  // cur = +-[[1, b'],[0, 1]]: exponent is a*b
  if (!word_to_matrix(word).psl_equal(m))
    throw std::logic_error("st-word recomposition mismatch");
  return word;
}

}  // namespace mcq
