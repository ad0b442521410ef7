"""Tour of the triangular-algebra core: construction, Peirce idempotents,
centers, annihilators, the corner isomorphism tau, quotients, and radicals.

Run:  python3 demos/triangular_basics.py
"""

from trialg import QQ, annihilators, center_T, center_direct, faithful_quotient, \
    nil_radical_T, radical, tau_iso
from trialg.algcore import Bimodule, build_triangular
from trialg.fixtures import (
    fixture_f1,
    fixture_f3,
    product_field_algebra,
    scalar_algebra,
    upper_triangular_algebra,
)


def show_subspace(label, tri, sub):
    print("  %s (dim %d):" % (label, sub.dim))
    for v in sub.basis:
        print("    ", tri.total.format_vector(v))


def main():
    print("== The 2x2 upper triangular matrices as Trian(Q, Q, Q) ==")
    f1 = fixture_f1()
    t = f1.total
    print("  basis:", ", ".join(t.basis_names))
    print("  p =", t.format_vector(f1.p), " q =", t.format_vector(f1.q))
    print("  E11*E12 =", t.format_vector(t.mul_vec(t.basis_vector(0), t.basis_vector(1))))
    show_subspace("center", f1, center_T(f1))
    print("  center equals the commutant-kernel oracle:",
          center_T(f1) == center_direct(t))

    print("\n== Annihilators and faithfulness ==")
    ann = annihilators(f1)
    print("  L =", ann.L.dim, " R =", ann.R.dim,
          " faithful:", ann.left_faithful and ann.right_faithful)
    show_subspace("left annihilator of M in T", f1, ann.lann_t)

    print("\n== tau: the corner isomorphism on the center ==")
    tau = tau_iso(f1)
    print("  tau sends the A-slice of the center to the B-slice; matrix:",
          tau.matrix.rows)

    print("\n== A non-faithful instance and its faithful quotient ==")
    kk = product_field_algebra(QQ, 2)
    dead = Bimodule(QQ, 2, 1, 1, [[[0]], [[1]]], [[[1]]], ["m"])
    tri = build_triangular(kk, dead, scalar_algebra(QQ))
    print("  Trian(QxQ, Q, Q) with a dead factor: L dim =", annihilators(tri).L.dim)
    quo = faithful_quotient(tri)
    print("  quotient dims: A=%d M=%d B=%d, faithful: %s"
          % (quo.A.dim, quo.M.dim_m, quo.B.dim, quo.is_faithful()))

    print("\n== Radicals ==")
    ut2 = upper_triangular_algebra(QQ, 2)
    print("  radical of UT2(Q):", [ut2.format_vector(v) for v in radical(ut2).basis])
    f3 = fixture_f3()
    show_subspace("nil radical of Trian(UT2, Q^2, Q)", f3, nil_radical_T(f3))
    print("  (= the strictly upper triangular part of UT3)")


if __name__ == "__main__":
    main()
