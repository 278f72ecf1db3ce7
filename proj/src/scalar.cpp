#include "wreslab/scalar.hpp"

#include <stdexcept>

namespace wreslab {

QQi& QQi::operator/=(const QQi& o) {
  if (o.is_zero()) throw std::domain_error("QQi: division by zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  // (a+bi)/(c+di) = (a+bi)(c-di)/(c^2+d^2)
  const mpq_class n = o.re_ * o.re_ + o.im_ * o.im_;
  mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
  im_ = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(r);
  return *this;
}

std::ostream& operator<<(std::ostream& os, const QQi& z) {
  if (sgn(z.im_) == 0) return os << z.re_;
  if (sgn(z.re_) == 0) return os << z.im_ << "i";
  return os << "(" << z.re_ << (sgn(z.im_) < 0 ? "" : "+") << z.im_ << "i)";
}

}  // namespace wreslab
