"""Smoke test for the chowkit extension module."""

import chowkit


def main():
    u34 = chowkit.Matroid.uniform(3, 4)
    h = u34.dual_chow()
    assert h.coeffs == [3, 11, 3], h
    assert u34.dual_chow(method="deletion") == h
    assert chowkit.uniform_dual_chow(3, 4) == h
    assert u34.gamma() == [3, 5]
    assert u34.dual_aug_chow().coeffs == [3, 17, 17, 3]
    assert chowkit.uniform_gamma(3, 4) == ([3, 5], [3, 8])

    fig4 = chowkit.Poset.fixture("figure4")
    h4 = fig4.dual_chow()
    assert h4.coeffs == [4, 39, 120, 120, 39, 4]
    assert not h4.is_real_rooted() and h4.count_real_roots() == 1
    assert fig4.chain_formula() == h4

    b3 = chowkit.Poset.fixture("b3")
    assert b3.dual_chow() == chowkit.eulerian(3)
    assert b3.ab_index() == "aa + 2*ab + 2*ba + bb"
    passed, text = b3.verify()
    assert passed, text

    chain = chowkit.Poset.from_covers(3, [(0, 1), (1, 2)])
    assert len(chain) == 3 and chain.rank == 2
    again = chowkit.Poset.from_json(chain.to_json())
    assert again.is_isomorphic(chain)

    k4 = chowkit.Matroid.k4()
    passed, text = k4.verify_deletions("all")
    assert passed, text
    assert k4.characteristic_polynomial().coeffs == [-6, 11, -6, 1]
    assert len(k4.lattice_of_flats()) == 15

    pi6 = chowkit.Poset.fixture("pi6").dual_chow()
    assert pi6.coeffs == [720, 15098, 56118, 56118, 15098, 720]

    try:
        chowkit.Matroid(4, [[0, 1], [2, 3]])
    except ValueError as e:
        assert "basis exchange" in str(e)
    else:
        raise AssertionError("invalid matroid accepted")

    print("smoke test passed:", h, "|", h4)


if __name__ == "__main__":
    main()
