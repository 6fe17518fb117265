"""Trapezoid-rule error against the exact residue assembly as the grid is refined."""
import argparse

from qduality.residue import (
    ContourConfig,
    IntegrandSpec,
    assemble_E,
    complex_point,
    contour_integral_numeric,
    default_rho,
    rho_window,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=float, default=0.45)
    ap.add_argument("--x", type=float, nargs="+", default=[1.0, 2.0, 2.1])
    ap.add_argument("--r", type=int, default=2)
    ap.add_argument("--l", type=int, default=0)
    ap.add_argument("--d", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--rho", type=float, default=None)
    args = ap.parse_args()

    point = complex_point(args.q, args.x)
    lo, hi = rho_window(point)
    rho = args.rho if args.rho is not None else default_rho(point)
    print(f"rho = {rho:.6f}, window ({lo:.4f}, {hi:.4f})")
    for d in args.d:
        spec = IntegrandSpec(point, args.r, d, args.l)
        exact = complex(assemble_E(spec))
        print(f"d={d}  exact = {exact:.15g}")
        prev = None
        for N in (64, 128, 256, 512):
            err = abs(contour_integral_numeric(spec, ContourConfig(rho, N)) - exact) / abs(exact)
            drop = f"{prev / err:10.1f}x" if prev and err else ""
            print(f"  N={N:4d}  rel.err = {err:.3e}  {drop}")
            prev = err


if __name__ == "__main__":
    main()
