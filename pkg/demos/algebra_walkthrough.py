"""Walk through the algebraic side: relations, transfer, Maurer-Cartan twisting.

    python demos/algebra_walkthrough.py
"""

from linfty_disks import check_linfty, check_morphism, homotopy_transfer
from linfty_disks.filtered import (FilteredElement, fukaya_toy_witness, is_mc, sign_table,
                                   twisted_diff, verify_fukaya1, verify_fukaya2)
from linfty_disks.samples import end_algebra, gauge_mc_element, so3

VDEG = [0, 1, 1, 2]
DMAT = [[0, 1, -1, 0], [0, 0, 0, 1], [0, 0, 0, 1], [0, 0, 0, 0]]


def main():
    print("so(3) relations up to word length 4:", check_linfty(so3(), 4).ok)

    # upper triangular endomorphisms of a small complex form a filtered dg Lie algebra
    alg = end_algebra(VDEG, DMAT, upper=True, weighted=True)
    print("End(V) generators:", ", ".join(alg.space.names))
    print("End(V) relations:", check_linfty(alg, 4).ok)

    h, phi = homotopy_transfer(alg, 4)
    print("homology generators:", list(h.space.names), "degrees", list(h.space.degrees))
    print("transferred operations nonzero in arities:", [k for k in h.ops if h.ell(k)])
    print("transferred relations:", check_linfty(h, 4).ok,
          " morphism equations:", check_morphism(phi, 4).ok)

    # a complex whose transferred structure has a nonzero ternary operation
    h3, phi3 = homotopy_transfer(end_algebra([0, 1, 1, 1], [[0, 0, 1, 0]] + [[0] * 4] * 3,
                                             upper=True), 3)
    print("second example: l_3 nonzero:", bool(h3.ell(3)), " relations:", check_linfty(h3, 3).ok,
          " morphism:", check_morphism(phi3, 3).ok)

    # an MC element built by conjugating d with exp(T X)
    K = 4
    x = [[0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0]]
    a = gauge_mc_element(alg, VDEG, DMAT, x, K)
    print("MC element a has", len(a.data), "terms; is MC:", is_mc(a, alg))
    b = FilteredElement.from_terms(alg.bar, [(0, ["E12"], 1)], K)
    db = twisted_diff(a, b, alg)
    print("twisted differential of E12 has", len(db.data), "terms; squares to zero:",
          not twisted_diff(a, db, alg).data)

    print("sign tables:", sign_table(4))
    w = fukaya_toy_witness(3)
    e1 = verify_fukaya1(w["alpha"], w["algebra"])
    e2 = verify_fukaya2(w["alpha"], w["beta"], w["L"], w["algebra"])
    print("toy witness: first equation", e1.ok, " second equation", e2.ok)


if __name__ == "__main__":
    main()
