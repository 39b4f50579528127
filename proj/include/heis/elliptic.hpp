#ifndef HEIS_ELLIPTIC_HPP
#define HEIS_ELLIPTIC_HPP

// Complete and incomplete elliptic integrals of the first kind and the
// Jacobi elliptic functions sn, cn, dn.  Everything uses the modulus
// convention: the argument k is the modulus, not the parameter m = k^2.

namespace heis {

// Modulus k in [0, 1].  Values overshooting the interval by at most
// 1e-12 (root-finding round-off upstream) are clamped; anything further
// out is rejected.
class Modulus {
 public:
  explicit Modulus(double k);
  double k() const { return k_; }
  double m() const { return k_ * k_; }

 private:
  double k_;
};

// K(k), the complete elliptic integral of the first kind, by the
// arithmetic-geometric mean.  Requires k < 1 (logarithmic pole at 1).
double ellip_K(const Modulus& k);

// Incomplete integral F(phi, k) for any real phi, k < 1.
double ellip_F(double phi, const Modulus& k);

struct JacobiValues {
  double sn;
  double cn;
  double dn;
};

// sn, cn, dn at u by the descending Landen recurrence, valid for the
// whole modulus range including the degenerate ends cn(u,0) = cos u and
// cn(u,1) = sech u.
JacobiValues jacobi_sncndn(double u, const Modulus& k);

// Principal inverses: inv_cn returns a value in [0, 2K], inv_sn in
// [-K, K].  Both require |x| <= 1 and k < 1.
double inv_cn(double x, const Modulus& k);
double inv_sn(double x, const Modulus& k);

}  // namespace heis

#endif  // HEIS_ELLIPTIC_HPP
