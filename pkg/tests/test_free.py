import pytest
from hypothesis import given

from cmduality import FreeMap, FreeModule, InhomogeneousError, PolyRing, StructureError
from cmduality.free import map_compose, map_degree_check

from strategies import homogeneous

R = PolyRing.standard(3)
x1, x2, x3 = R.gens()


def test_compose_with_identity():
    F, G = FreeModule(R, (0,)), FreeModule(R, (1, 2))
    g = FreeMap.from_matrix(G, F, [[x1, x2**2]])
    assert map_compose(g, FreeMap.identity(G)) == g
    assert map_compose(FreeMap.identity(F), g) == g


def test_compose_scalar_maps():
    a = FreeMap.from_matrix(FreeModule(R, (1,)), FreeModule(R, (0,)), [[x1]])
    b = FreeMap.from_matrix(FreeModule(R, (2,)), FreeModule(R, (1,)), [[x2]])
    assert map_compose(a, b).matrix == [[x1 * x2]]


def test_koszul_differentials_compose_to_zero():
    d1 = FreeMap.from_matrix(FreeModule(R, (1, 1)), FreeModule(R, (0,)), [[x1, x2]])
    d2 = FreeMap.from_matrix(FreeModule(R, (2,)), FreeModule(R, (1, 1)), [[-x2], [x1]])
    assert map_compose(d1, d2).is_zero()


def test_degree_check():
    ok = FreeMap.from_matrix(FreeModule(R, (1,)), FreeModule(R, (0,)), [[x1]])
    assert map_degree_check(ok) is ok
    with pytest.raises(InhomogeneousError, match=r"inhomogeneous map: entry \(0,0\)"):
        FreeMap.from_matrix(FreeModule(R, (0,)), FreeModule(R, (0,)), [[x1]])
    zero = FreeMap.from_matrix(FreeModule(R, (5, -2)), FreeModule(R, (3,)), [[0, 0]])
    assert map_degree_check(zero) is zero


def test_shape_errors():
    with pytest.raises(StructureError):
        FreeMap.from_matrix(FreeModule(R, (0,)), FreeModule(R, (0,)), [[1, 1]])
    F = FreeModule(R, (0,))
    f = FreeMap.identity(F)
    with pytest.raises(StructureError):
        map_compose(f, FreeMap.identity(FreeModule(R, (1,))))


def test_elements_are_twisted_homogeneous():
    F = FreeModule(R, (0, 1))
    v = F.element([x1**2, x3])
    assert v.degree == 2
    with pytest.raises(InhomogeneousError):
        F.element([x1, x2])


@given(homogeneous(R, degree=1), homogeneous(R, degree=1), homogeneous(R, degree=2), homogeneous(R, degree=1))
def test_composition_associative(a, b, c, d):
    F0, F1, F2, F3 = (FreeModule(R, t) for t in [(0,), (1, 1), (2, 3), (4,)])
    f = FreeMap.from_matrix(F3, F2, [[c], [d]])
    g = FreeMap.from_matrix(F2, F1, [[a, c], [b, a * b]])
    h = FreeMap.from_matrix(F1, F0, [[a, b]])
    assert map_compose(h, map_compose(g, f)) == map_compose(map_compose(h, g), f)
