import pytest
import sys
import os

# Add the parent directory to the Python path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.algebra import brandt, chain, symmetric_inverse
from src.filters import efilters
from src.germ_groupoid import (
    BadBase,
    DomainError,
    GermPoint,
    NotComposable,
    beta,
    build_germ_groupoid,
    check_germ_groupoid,
    compose_germs,
    germ_class,
    germ_equiv,
    germ_topology,
    invert_germ,
    lambda_points,
    theta,
)
from src.groupoid import check_axioms
from src.topology import is_hausdorff


def labels_of(S, xi):
    return {S.label(e) for e in xi.members}


def efilter(S, *labels):
    wanted = set(labels)
    return next(xi for xi in efilters(S, "proper") if labels_of(S, xi) == wanted)


def test_beta_symmetric():
    S = symmetric_inverse(2)
    xi = efilter(S, "1-", "12")
    assert labels_of(S, beta(S, S.index("21"), xi)) == {"-2", "12"}
    assert labels_of(S, beta(S, S.index("2-"), xi)) == {"-2", "12"}
    # β_s(ξ) 总含 ss⁻¹
    top = efilter(S, "12")
    assert beta(S, S.index("21"), top) == top


def test_beta_outside_domain():
    S = symmetric_inverse(2)
    with pytest.raises(DomainError):
        beta(S, S.index("2-"), efilter(S, "-2", "12"))


def test_beta_brandt():
    S = brandt(2)
    assert labels_of(S, beta(S, S.index("e12"), efilter(S, "e22"))) == {"e11"}


def test_germ_equiv():
    S = chain(2)
    xi = efilter(S, "x1", "x2")
    x1, x2 = S.index("x1"), S.index("x2")
    assert germ_equiv(S, GermPoint(x1, xi), GermPoint(x2, xi))
    # 不同的 ξ 不等价
    assert not germ_equiv(S, GermPoint(x2, xi), GermPoint(x2, efilter(S, "x2")))
    # 不在 Λ 中的点
    assert not germ_equiv(S, GermPoint(x1, efilter(S, "x2")), GermPoint(x1, efilter(S, "x2")))


def test_lambda_points():
    S = symmetric_inverse(2)
    assert len(lambda_points(S, efilters(S, "proper"))) == 10


def test_chain_germs_collapse():
    """链上 G₀ 只有两个芽，而且都是单位"""
    S = chain(2)
    G = build_germ_groupoid(S)
    assert len(G.invert) == 2
    assert G.units == frozenset(G.arrows)
    xi = efilter(S, "x1", "x2")
    g = germ_class(S, GermPoint(S.index("x1"), xi))
    h = germ_class(S, GermPoint(S.index("x2"), xi))
    assert g == h
    assert len(g.members) == 2
    assert str(g) == "[x1, {x1, x2}]"


def test_germ_class_outside_domain():
    S = chain(2)
    with pytest.raises(DomainError):
        germ_class(S, GermPoint(S.index("x1"), efilter(S, "x2")))


@pytest.mark.parametrize("build, proper, ultra", [
    (lambda: chain(2), 2, 1),
    (lambda: brandt(2), 4, 4),
    (lambda: symmetric_inverse(2), 6, 4),
])
def test_germ_counts(build, proper, ultra):
    """芽的个数与真滤子、超滤子的个数相同"""
    S = build()
    assert len(build_germ_groupoid(S, "proper").invert) == proper
    assert len(build_germ_groupoid(S, "ultra").invert) == ultra
    assert check_axioms(build_germ_groupoid(S, "tight")).ok


def test_invert_and_compose_brandt():
    S = brandt(2)
    g = germ_class(S, GermPoint(S.index("e12"), efilter(S, "e22")))
    h = germ_class(S, GermPoint(S.index("e21"), efilter(S, "e11")))
    assert invert_germ(g) == h
    gh = compose_germs(g, h)
    assert S.label(gh.s) == "e11"
    assert labels_of(S, gh.xi) == {"e11"}
    with pytest.raises(NotComposable):
        compose_germs(g, g)


def test_swap_germ_is_own_inverse():
    S = symmetric_inverse(2)
    g = germ_class(S, GermPoint(S.index("21"), efilter(S, "12")))
    assert invert_germ(g) == g
    assert S.label(compose_germs(g, g).s) == "12"


def test_theta():
    S = brandt(2)
    G = build_germ_groupoid(S)
    e12 = S.index("e12")
    members = theta(S, e12, [efilter(S, "e22")], G)
    assert len(members) == 1
    assert str(G.payload[next(iter(members))]) == "[e12, {e22}]"
    assert theta(S, e12, [], G) == frozenset()
    with pytest.raises(BadBase):
        theta(S, e12, [efilter(S, "e11")], G)


def test_theta_chain_collapse():
    """Θ(x1, {ξ}) 与 Θ(x2, {ξ}) 是同一个芽"""
    S = chain(2)
    xi = efilter(S, "x1", "x2")
    assert theta(S, S.index("x1"), [xi]) == theta(S, S.index("x2"), [xi])


def test_theta_skips_filters_outside_reduction():
    S = chain(2)
    U = build_germ_groupoid(S, "ultra")
    assert theta(S, S.index("x2"), [efilter(S, "x2")], U) == frozenset()


def test_germ_topology_hausdorff():
    S = chain(2)
    G = build_germ_groupoid(S)
    T = germ_topology(S, G)
    assert T.basis_report.ok
    assert is_hausdorff(T)


@pytest.mark.parametrize("build", [lambda: chain(2), lambda: brandt(2), lambda: symmetric_inverse(2)])
def test_check_germ_groupoid_passes(build):
    assert check_germ_groupoid(build()).ok


def test_broken_equivalence_detected():
    """只翻转一个有序对的判定，对称性随之失效"""
    S = chain(2)
    x1, x2 = S.index("x1"), S.index("x2")
    top = efilter(S, "x1", "x2").carrier

    def flipped(S, p, q):
        if (p.s, q.s, p.xi.carrier, q.xi.carrier) == (x2, x1, top, top):
            return not germ_equiv(S, p, q)
        return germ_equiv(S, p, q)

    report = check_germ_groupoid(S, flipped)
    assert not report.ok
    assert report.first.claim == "germ-symmetric"


def test_cross_base_equivalence_detected():
    """把不同 ξ 上的两点判为等价，也必须被发现"""
    S = chain(2)
    x2 = S.index("x2")
    low, top = efilter(S, "x2").carrier, efilter(S, "x1", "x2").carrier

    def flipped(S, p, q):
        if (p.s, q.s, p.xi.carrier, q.xi.carrier) == (x2, x2, low, top):
            return True
        return germ_equiv(S, p, q)

    report = check_germ_groupoid(S, flipped)
    assert not report.ok
    assert report.first.claim == "germ-carrier"
    claims = {v.claim for v in report.violations}
    assert "germ-symmetric" in claims
