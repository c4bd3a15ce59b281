import pytest
import sys
import os

# Add the parent directory to the Python path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.algebra import TooLarge, brandt, chain, symmetric_inverse
from src.filters import efilters
from src.topology import (
    closure,
    check_map_topology,
    efilter_topology,
    generate_topology,
    is_hausdorff,
    patch_family,
    same_topology,
    subspace,
    tight_efilters,
)


def sierpinski():
    return generate_topology(["p", "q"], [{"p"}, {"p", "q"}])


def test_opens_of_sierpinski():
    T = sierpinski()
    assert T.basis_report.ok
    assert T.opens == {frozenset(), frozenset({"p"}), frozenset({"p", "q"})}
    assert T.is_open({"p"})
    assert not T.is_open({"q"})
    assert T.neighborhood("q") == {"p", "q"}


def test_discrete_opens():
    T = generate_topology(range(4), [{i} for i in range(4)])
    assert len(T.open_masks) == 16
    assert is_hausdorff(T)


def test_open_set_limit():
    T = generate_topology(range(17), [{i} for i in range(17)])
    with pytest.raises(TooLarge):
        T.open_masks


def test_point_limit():
    with pytest.raises(TooLarge):
        generate_topology(range(5), [], limit=3)


def test_basis_report():
    T = generate_topology([1, 2, 3], [{1, 2}, {2, 3}])
    assert not T.basis_report.ok
    assert T.basis_report.first.claim == "basis-intersection"
    assert T.basis_report.first.witness[0] == 2
    T = generate_topology([1, 2, 3], [{1}])
    claims = [v.claim for v in T.basis_report.violations]
    assert claims == ["basis-cover", "basis-cover"]


def test_hausdorff_witness():
    verdict = is_hausdorff(sierpinski())
    assert not verdict
    assert verdict.witness == ("p", "q")


def test_closure():
    T = sierpinski()
    assert closure(T, {"q"}) == {"q"}
    assert closure(T, {"p"}) == {"p", "q"}
    assert closure(T, set()) == frozenset()


def test_subspace_and_same_topology():
    T = sierpinski()
    sub = subspace(T, {"q"})
    assert sub.points == ("q",)
    assert sub.opens == {frozenset(), frozenset({"q"})}
    # 冗余的基集不改变拓扑
    assert same_topology(T, generate_topology(["p", "q"], [{"p"}, {"p", "q"}, {"p"}]))
    assert not same_topology(T, generate_topology(["p", "q"], [{"p"}, {"q"}]))
    assert not same_topology(T, generate_topology(["p"], [{"p"}]))


def test_continuous_but_not_open():
    """离散空间到 Sierpiński 空间的常值映射连续但不开"""
    D = generate_topology(["a", "b"], [{"a"}, {"b"}])
    report = check_map_topology(D, sierpinski(), {"a": "q", "b": "q"})
    assert report.continuous
    assert not report.open
    assert not report.homeomorphic
    assert {v.claim for v in report.violations} == {"openness"}


def test_identity_is_homeomorphism():
    T = sierpinski()
    report = check_map_topology(T, T, {"p": "p", "q": "q"})
    assert report.homeomorphic
    assert report.violations == ()
    # 反过来的映射 p ↔ q 不连续
    report = check_map_topology(T, T, {"p": "q", "q": "p"})
    assert not report.continuous


def test_patch_family_chain():
    S = chain(2)
    xis = efilters(S, "proper")
    family = patch_family(S, xis, S.index("x2"))
    found = {item.members: item.T for item in family}
    assert set(found) == {frozenset(xis), frozenset(xis[1:]), frozenset()}
    assert found[frozenset(xis)] == ()
    assert found[frozenset(xis[1:])] == (S.index("x1"),)


def test_efilter_topologies_chain():
    """E-滤子上的主拓扑不是 Hausdorff，patch 拓扑是离散的"""
    S = chain(2)
    xis = efilters(S, "proper")
    assert not is_hausdorff(efilter_topology(S, xis, "principal"))
    patch = efilter_topology(S, xis, "patch")
    assert len(patch.open_masks) == 4


@pytest.mark.parametrize("build, expected", [
    (lambda: chain(1), [{"x1"}]),
    (lambda: chain(2), [{"x1", "x2"}]),
    (lambda: brandt(2), [{"e11"}, {"e22"}]),
    (lambda: symmetric_inverse(2), [{"1-", "12"}, {"-2", "12"}]),
])
def test_tight_efilters(build, expected):
    S = build()
    tight = tight_efilters(S)
    assert [{S.label(e) for e in xi.members} for xi in tight.filters] == expected
    assert tight.compactable
