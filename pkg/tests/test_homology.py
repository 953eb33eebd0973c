import pytest
from hypothesis import given

from cmduality import (
    FPModule,
    InhomogeneousError,
    PolyRing,
    betti_table,
    complex_homology,
    free_resolution,
    hilbert_function,
    is_isomorphic,
    koszul_complex,
    quotient_ring,
)
from cmduality.homology import hilbert_from_resolution, pd, render_betti
from cmduality.modules import cokernel

from oracles import hilbert, syzygy_dimension
from strategies import artinian_monomial_ideal, mono_poly, monomial_ideal

S4 = PolyRing.standard(4)
R3 = PolyRing.standard(3)
x1, x2, x3, x4 = S4.gens()


def ranks(M):
    return [len(tw) for _, tw in betti_table(M)]


def test_resolution_examples(ex, k4):
    assert ranks(FPModule.free(S4)) == [1]
    assert ranks(k4) == [1, 4, 6, 4, 1]
    assert ranks(ex.R) == [1, 4, 4, 1]
    assert betti_table(ex.R) == [(0, [0]), (1, [2, 2, 2, 2]), (2, [3, 3, 3, 3]), (3, [4])]
    # the linear syzygies of the four monomials account for all of F2
    monos = [f.coeffs for f in ex.I]
    assert syzygy_dimension(monos, [2] * 4, 4, 3) == 4
    assert render_betti(ex.R).splitlines()[1] == "1: 4(2,2,2,2)"


def test_pd_examples(ex, k4):
    assert pd(FPModule.free(S4)) == 0
    assert pd(k4) == 4
    assert pd(ex.R) == 3
    with pytest.raises(ValueError, match="pd undefined for 0"):
        pd(FPModule.zero(S4))


def test_resolution_homology(ex):
    res = free_resolution(ex.R)
    for i in range(1, res.length + 1):
        assert complex_homology(res, i).is_zero()
    H0 = complex_homology(res, 0)
    assert H0 == cokernel(res.maps[0])[0]
    assert is_isomorphic(H0, ex.R) == "yes"


def test_koszul_dependent_pair():
    K = koszul_complex([x1, x1], FPModule.free(S4))
    H1 = complex_homology(K, 1)
    assert is_isomorphic(H1, quotient_ring(S4, [x1]).shift(-1)) == "yes"


def test_koszul_examples(ex):
    K = koszul_complex([x1, x3], ex.R)
    assert is_isomorphic(complex_homology(K, 0), quotient_ring(S4, list(ex.I) + [x1, x3])) == "yes"
    K = koszul_complex(S4.gens(), FPModule.free(S4))
    assert all(complex_homology(K, i).is_zero() for i in range(1, 5))
    with pytest.raises(InhomogeneousError):
        koszul_complex([x1 + x2 * x3], ex.R)
    with pytest.raises(ValueError):
        koszul_complex([x1], ex.R, "both")


def test_koszul_self_duality(ex):
    chain = koszul_complex([x1, x2], ex.R, "chain")
    cochain = koszul_complex([x1, x2], ex.R, "cochain")
    for i in range(3):
        Hc = complex_homology(chain, i)
        Hk = complex_homology(cochain, 2 - i)
        for d in range(-1, 7):
            assert hilbert_function(Hc, d) == hilbert_function(Hk, d - 2)


@given(monomial_ideal(3, 3, 4))
def test_resolution_properties(gens):
    M = quotient_ring(R3, [mono_poly(R3, e) for e in gens])
    res = free_resolution(M)
    for f in res.maps:
        for col in f.lift:
            assert all(any(m) for (_, m) in col)
    for i in range(1, res.length + 1):
        assert complex_homology(res, i).is_zero()
    polys = [{tuple(e): 1} for e in gens]
    for d in range(0, 7):
        assert hilbert_from_resolution(M, d) == hilbert_function(M, d) == hilbert(polys, 3, d)


@given(artinian_monomial_ideal(3, 3, 2))
def test_koszul_d_squared_and_h0(gens):
    M = quotient_ring(R3, [mono_poly(R3, e) for e in gens])
    xs = R3.gens()
    for variant in ("chain", "cochain"):
        K = koszul_complex(xs, M, variant)
        for k in range(len(K.maps) - 1):
            a, b = (K.maps[k + 1], K.maps[k]) if K.cochain else (K.maps[k], K.maps[k + 1])
            assert a.compose(b).is_zero()
    H0 = complex_homology(koszul_complex(xs, M), 0)
    assert [hilbert_function(H0, d) for d in range(3)] == [1, 0, 0]
