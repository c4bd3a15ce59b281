import numpy as np
import pytest
import sys
import os

# Add the parent directory to the Python path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.algebra import (
    InverseSemigroup,
    MalformedTable,
    MeetMissing,
    MissingZero,
    ValidationError,
    adjoin_zero,
    bits,
    brandt,
    build_standard,
    chain,
    idempotents,
    inverse_closure_subsemigroup,
    mask_of,
    meet_semilattice,
    natural_leq,
    natural_leq_alt,
    order_properties,
    order_relation,
    require_valid,
    symmetric_inverse,
    validate_inverse_semigroup,
)


def test_builders_sizes():
    """标准样例的元素个数与零元位置"""
    assert brandt(2).n == 5
    assert brandt(3).n == 10
    assert symmetric_inverse(2).n == 7
    assert symmetric_inverse(3).n == 34
    assert chain(2).n == 3
    for S in (brandt(2), symmetric_inverse(2), chain(2)):
        assert S.zero == 0
        assert S.label(0) == "0"


def test_brandt_products():
    """e_ij·e_kl = δ_jk e_il"""
    S = brandt(2)
    e11, e12, e21, e22 = (S.index(x) for x in ("e11", "e12", "e21", "e22"))
    assert S.mul(e12, e21) == e11
    assert S.mul(e21, e12) == e22
    assert S.mul(e12, e12) == S.zero
    assert S.inverse(e12) == e21
    assert S.inverse(e11) == e11


def test_symmetric_inverse_labels():
    """k=2 时按定义域排序，单行记号命名"""
    S = symmetric_inverse(2)
    assert S.labels == ("0", "1-", "2-", "-1", "-2", "12", "21")
    swap = S.index("21")
    assert S.mul(swap, swap) == S.index("12")
    # 先作用右边的映射
    assert S.mul(S.index("2-"), S.index("-1")) == S.index("-2")


def test_validate_reports_ok():
    report = validate_inverse_semigroup(brandt(2).table)
    assert report.ok
    assert report.semigroup.n == 5


def test_validate_moves_zero_to_front():
    """零元不在下标 0 时被重排到 0，relabel 记录原下标"""
    t = [[0, 1, 1],
         [1, 1, 1],
         [1, 1, 2]]
    S = require_valid(t, ["a", "z", "b"])
    assert S.zero == 0
    assert S.labels == ("z", "a", "b")
    assert S.relabel == (1, 0, 2)
    assert S.mul(2, 2) == 2


def test_validate_non_commuting_idempotents():
    """左零半群加零元：幂等元不交换"""
    t = [[0, 0, 0],
         [0, 1, 1],
         [0, 2, 2]]
    report = validate_inverse_semigroup(t)
    assert not report.ok
    assert any("idempotents do not commute" in v for v in report.violations)
    with pytest.raises(ValidationError):
        require_valid(t)


def test_validate_not_associative():
    t = [[0, 0, 0],
         [0, 2, 0],
         [0, 0, 1]]
    report = validate_inverse_semigroup(t)
    assert any("not associative" in v for v in report.violations)


def test_missing_zero():
    """Z₂ 没有零元，只有这一条违例时抛出 MissingZero"""
    z2 = [[0, 1], [1, 0]]
    with pytest.raises(MissingZero):
        require_valid(z2)
    S = adjoin_zero(require_valid(z2, require_zero=False))
    assert S.n == 3
    assert S.zero == 0
    assert S.labels[0] == "z"


def test_malformed_tables():
    with pytest.raises(MalformedTable):
        require_valid([[0, 1]])
    with pytest.raises(MalformedTable):
        require_valid([[0, 5], [0, 0]])
    with pytest.raises(MalformedTable):
        require_valid(np.zeros((257, 257), dtype=int))


def test_idempotents_and_order():
    S = symmetric_inverse(2)
    E = idempotents(S)
    assert [S.label(e) for e in E.members] == ["0", "1-", "-2", "12"]
    order = order_relation(S)
    assert order.leq[S.index("1-"), S.index("12")]
    assert not order.leq[S.index("12"), S.index("21")]
    assert (S.index("2-"), S.index("21")) in order.hasse
    # 0 只被原子覆盖
    assert (0, S.index("12")) not in order.hasse


def test_natural_order_formulas_agree():
    """a = aa⁻¹b 与 a = ba⁻¹a 两种写法一致"""
    for S in (brandt(2), symmetric_inverse(2), chain(3)):
        for a in S.elements:
            for b in S.elements:
                assert natural_leq(S, a, b) == natural_leq_alt(S, a, b) == bool(S.leq[a, b])


def test_chain_hasse():
    S = chain(2)
    assert order_relation(S).hasse == ((0, 1), (1, 2))
    assert brandt(2).up_masks[1] == 0b10


def test_meet_semilattice():
    """菱形格：0 < a, b < 1"""
    leq = np.array([
        [1, 1, 1, 1],
        [0, 1, 0, 1],
        [0, 0, 1, 1],
        [0, 0, 0, 1],
    ], dtype=bool)
    S = build_standard("meet_semilattice", leq, ["0", "a", "b", "1"])
    assert S.mul(S.index("a"), S.index("b")) == S.zero
    assert S.mul(S.index("a"), S.index("1")) == S.index("a")
    assert bits(S.idempotent_mask) == [0, 1, 2, 3]


def test_meet_semilattice_errors():
    with pytest.raises(MeetMissing):
        meet_semilattice(np.eye(2, dtype=bool))
    with pytest.raises(MeetMissing):
        meet_semilattice(np.array([[1, 1], [1, 1]], dtype=bool))
    # 0 < 3 < 1, 2 构成交半格；转置后没有最小元
    leq = np.array([
        [1, 1, 1, 1],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [0, 1, 1, 1],
    ], dtype=bool)
    meet_semilattice(leq)
    with pytest.raises(MeetMissing):
        meet_semilattice(leq.T)


def test_build_standard_unknown_family():
    with pytest.raises(ValueError):
        build_standard("cyclic", 3)


def test_inverse_closure_subsemigroup():
    S = symmetric_inverse(2)
    sub = inverse_closure_subsemigroup(S, [S.index("21")])
    assert sub.semigroup.n == 3
    assert sub.embedding == (0, S.index("12"), S.index("21"))
    assert sub.semigroup.labels == ("0", "12", "21")


def test_inverse_closure_adds_inverses():
    S = symmetric_inverse(3)
    sub = inverse_closure_subsemigroup(S, [S.index("2--")])
    labels = set(sub.semigroup.labels)
    assert {"0", "2--", "-1-", "1--", "-2-"} == labels


def test_mask_helpers():
    assert mask_of([0, 2, 5]) == 0b100101
    assert bits(0b100101) == [0, 2, 5]
    assert bits(0) == []


@pytest.mark.parametrize("S", [
    chain(1), chain(3), brandt(2), brandt(3), symmetric_inverse(2), symmetric_inverse(3),
    meet_semilattice([[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]]),
], ids=["chain1", "chain3", "brandt2", "brandt3", "sym2", "sym3", "diamond"])
def test_order_properties_hold(S):
    """自然偏序与逆元的基本性质在标准样例上全部成立"""
    properties = order_properties(S)
    assert set(properties) == {
        "inverse-involution", "inverse-antimorphism", "inverse-monotone", "product-monotone",
        "domain-shrinks", "conjugate-idempotent", "restriction-below", "below-idempotent",
        "idempotent-meet",
    }
    assert all(properties.values()), properties


def test_order_properties_detect_wrong_inverse():
    """把逆元换成恒等映射后 (ab)⁻¹ = b⁻¹a⁻¹ 不再成立"""
    S = brandt(2)
    broken = InverseSemigroup(S.table, np.arange(S.n), S.zero, S.labels)
    properties = order_properties(broken)
    assert properties["inverse-involution"]
    assert not properties["inverse-antimorphism"]


def test_adjoin_zero_keeps_existing_zero():
    """已有零元时原样返回：平凡群 {1} 的唯一元素本身就是零元"""
    trivial = require_valid([[0]], labels=["1"])
    assert trivial.zero == 0
    assert adjoin_zero(trivial) is trivial
    S = brandt(2)
    assert adjoin_zero(S) is S
