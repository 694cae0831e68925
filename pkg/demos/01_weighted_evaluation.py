"""Evaluate weighted orthonormal polynomials without leaving double range.

The weighted square M(x) couples a polynomial that grows factorially in the
degree with a weight that collapses just as fast.  Each factor is carried as
(significand, log offset), so the product is formed in log space and only the
final, moderate value is ever exponentiated.
"""

from jacobimax import Params, Window, eval_orthonormal, weighted_M


def main():
    print("=" * 64)
    print("Weighted evaluation at moderate and extreme exponents")
    print("=" * 64)

    w = Window.full()

    p = Params(12, 1.0, 0.5)
    for x in [0.0, 0.35, 0.9]:
        val = eval_orthonormal(p, x)
        mv = weighted_M(p, x, w)
        print(f"k=12 alpha=1 beta=0.5  x={x:5.2f}  P = {val.to_float():+.12e}  M = {mv.value:.12e}")
    print()

    # at alpha = beta = 1e5 the weight at x = 0.3 is exp(-102128), some
    # 101000 orders of magnitude below what a double can hold, yet inside
    # the oscillation band the weighted square is still O(10)
    p = Params(50, 1e5, 1e5)
    for x in [0.0005, 0.005, 0.02, 0.3]:
        val = eval_orthonormal(p, x)
        mv = weighted_M(p, x, w)
        print(
            f"k=50 alpha=beta=1e5    x={x:6.4f}  ln|P| = {val.ln_mag:12.2f}"
            f"  M = {mv.value:.12e}  ln M = {mv.ln_value:12.3f}"
        )
    print()
    print("At x = 0.3 the value of M underflows to zero as a double, but its")
    print("exact logarithm is still reported; nothing in the pipeline ever")
    print("multiplied the raw factors together.")


if __name__ == "__main__":
    main()
