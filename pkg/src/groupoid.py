"""有限群胚模块

抽象的有限群胚表示，以及两种具体构造（滤子群胚、芽群胚）共用的检验器：
群胚公理、局部双截面、étale 基、同构与子群胚。

箭头用 0..m-1 的整数编号，payload 存放对应的滤子或芽；
复合只对可复合对 G⁽²⁾ 显式存储为字典。
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

from src.algebra import SemigroupError

logger = logging.getLogger(__name__)


class GroupoidError(SemigroupError):
    pass


@dataclass(frozen=True)
class Violation:
    claim: str
    message: str
    witness: tuple = ()


@dataclass(frozen=True)
class CheckReport:
    """检验结果：没有违例即通过"""
    name: str
    violations: tuple[Violation, ...] = ()
    domain: Mapping[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def first(self) -> Violation | None:
        return self.violations[0] if self.violations else None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=False)
class FiniteGroupoid:
    """
    有限群胚 G。

    属性:
        compose (dict): (α, β) ↦ αβ，键集即可复合对 G⁽²⁾
        invert (tuple[int, ...]): γ ↦ γ⁻¹
        payload (tuple): 每个箭头附带的滤子或芽
        labels (tuple[str, ...]): 箭头显示名
    """
    compose: Mapping[tuple[int, int], int]
    invert: tuple[int, ...]
    payload: tuple[Any, ...]
    labels: tuple[str, ...] = ()

    @property
    def arrows(self) -> range:
        return range(len(self.invert))

    @property
    def composable(self):
        return self.compose.keys()

    def d(self, g: int) -> int | None:
        return self.compose.get((self.invert[g], g))

    def r(self, g: int) -> int | None:
        return self.compose.get((g, self.invert[g]))

    @property
    def units(self) -> frozenset[int]:
        return frozenset(u for g in self.arrows if (u := self.d(g)) is not None)

    def index(self, item: Hashable) -> int:
        return self._index[item]

    def arrow_set(self, items: Iterable[Hashable]) -> frozenset[int]:
        return frozenset(self._index[p] for p in items)

    @cached_property
    def _index(self) -> dict:
        return {p: i for i, p in enumerate(self.payload)}

    def inverse_set(self, A: Iterable[int]) -> frozenset[int]:
        return frozenset(self.invert[a] for a in A)

    def product_set(self, A: Iterable[int], B: Iterable[int]) -> frozenset[int]:
        """AB := {αβ : (α, β) ∈ (A × B) ∩ G⁽²⁾}"""
        B = list(B)
        return frozenset(self.compose[(a, b)] for a in A for b in B if (a, b) in self.compose)

    def source_set(self, A: Iterable[int]) -> frozenset[int]:
        return frozenset(self.d(a) for a in A)


def from_operations(payloads: Sequence[Hashable],
                    invert: Callable[[Any], Any],
                    composable: Callable[[Any, Any], bool],
                    compose: Callable[[Any, Any], Any],
                    label: Callable[[Any], str] = str) -> FiniteGroupoid:
    """
    由 payload 上的运算构造群胚。

    参数:
        payloads: 全部箭头（可哈希，互不相同）
        invert / composable / compose: payload 上的求逆、可复合判定与复合

    返回:
        FiniteGroupoid: 若复合或求逆的结果落在箭头集之外则抛出 GroupoidError
    """
    index = {p: i for i, p in enumerate(payloads)}
    if len(index) != len(payloads):
        raise GroupoidError("箭头 payload 有重复")

    def lookup(p, what):
        try:
            return index[p]
        except KeyError:
            raise GroupoidError(f"{what} {label(p)} 不在箭头集中") from None

    inv = tuple(lookup(invert(p), f"{label(p)} 的逆") for p in payloads)
    table = {}
    for i, p in enumerate(payloads):
        for j, q in enumerate(payloads):
            if composable(p, q):
                table[(i, j)] = lookup(compose(p, q), f"{label(p)}·{label(q)}")
    logger.debug("groupoid with %d arrows, %d composable pairs", len(payloads), len(table))
    return FiniteGroupoid(table, inv, tuple(payloads), tuple(label(p) for p in payloads))


def pair_groupoid(k: int) -> FiniteGroupoid:
    """k 个对象上的对群胚，箭头 (i, j)，(i, j)(j, l) = (i, l)"""
    pairs = [(i, j) for i in range(k) for j in range(k)]
    return from_operations(
        pairs,
        invert=lambda p: (p[1], p[0]),
        composable=lambda p, q: p[1] == q[0],
        compose=lambda p, q: (p[0], q[1]),
        label=lambda p: f"({p[0]},{p[1]})",
    )


# ------------------ 检验器 ------------------

def check_axioms(G: FiniteGroupoid) -> CheckReport:
    """
    检验群胚公理：
        (i)   (γ⁻¹)⁻¹ = γ 且 (γ⁻¹, γ) ∈ G⁽²⁾
        (ii)  (α,β),(β,γ) ∈ G⁽²⁾ ⟹ (α,βγ),(αβ,γ) ∈ G⁽²⁾ 且 α(βγ) = (αβ)γ
        (iii) (γ,η) ∈ G⁽²⁾ ⟹ γ⁻¹γη = η 且 γηη⁻¹ = γ
    每条公理只报告第一个违例。
    """
    C = G.compose
    inv = G.invert
    found = {}

    def fail(axiom, message, witness):
        found.setdefault(axiom, Violation(axiom, message, witness))

    for g in G.arrows:
        if inv[inv[g]] != g:
            fail("axiom-i", "double inverse differs", (g,))
        if (inv[g], g) not in C:
            fail("axiom-i", "(γ⁻¹, γ) not composable", (g,))

    by_left = defaultdict(list)
    for a, b in C:
        by_left[a].append(b)
    for (a, b), ab in C.items():
        for c in by_left[b]:
            bc = C[(b, c)]
            if (a, bc) not in C or (ab, c) not in C:
                fail("axiom-ii", "composability does not propagate", (a, b, c))
            elif C[(a, bc)] != C[(ab, c)]:
                fail("axiom-ii", "not associative", (a, b, c))

    for (g, h), gh in C.items():
        gi, hi = inv[g], inv[h]
        left = C.get((gi, g))
        if left is None or (left, h) not in C or C[(left, h)] != h:
            fail("axiom-iii", "γ⁻¹γη ≠ η", (g, h))
        right = C.get((h, hi))
        if right is None or (g, right) not in C or C[(g, right)] != g:
            fail("axiom-iii", "γηη⁻¹ ≠ γ", (g, h))
        if (gh, hi) not in C or C[(gh, hi)] != g:
            fail("axiom-iii", "(γη)η⁻¹ ≠ γ", (g, h))

    order = ("axiom-i", "axiom-ii", "axiom-iii")
    return CheckReport("groupoid-axioms", tuple(found[k] for k in order if k in found),
                       {"arrows": len(G.invert), "composable": len(C)})


def is_local_bisection(G: FiniteGroupoid, A: Iterable[int]) -> bool:
    """d|_A 与 r|_A 都是单射；两者不一致时按否处理并记录"""
    A = list(A)
    by_d = len({G.d(a) for a in A}) == len(A)
    by_r = len({G.r(a) for a in A}) == len(A)
    if by_d != by_r:
        logger.debug("d and r injectivity disagree on %s", sorted(A))
    return by_d and by_r


def is_etale_basis(G: FiniteGroupoid, B: Sequence[Iterable[int]]) -> CheckReport:
    """对所有 O, N ∈ B 检验 O⁻¹ ∈ B、ON ∈ B 以及 O⁻¹O ⊆ G⁽⁰⁾"""
    family = [frozenset(O) for O in B]
    members = set(family)
    units = G.units
    violations = []
    for i, O in enumerate(family):
        Oi = G.inverse_set(O)
        if Oi not in members:
            violations.append(Violation("etale-inverse", "O⁻¹ ∉ B", (i,)))
        if not G.product_set(Oi, O) <= units:
            violations.append(Violation("etale-units", "O⁻¹O ⊄ G⁽⁰⁾", (i,)))
        for j, N in enumerate(family):
            if G.product_set(O, N) not in members:
                violations.append(Violation("etale-product", "ON ∉ B", (i, j)))
                break
    return CheckReport("etale-basis", tuple(violations), {"basis": len(family)})


def is_isomorphism(G: FiniteGroupoid, H: FiniteGroupoid, phi: Mapping[int, int] | Sequence[int]) -> CheckReport:
    """检验 φ: G → H 是双射且双向保持可复合性与复合"""
    phi = [phi[g] for g in G.arrows]
    violations = []
    if len(phi) != len(H.invert) or sorted(phi) != list(H.arrows):
        violations.append(Violation("iso-bijective", "φ is not a bijection", tuple(phi)))
        return CheckReport("isomorphism", tuple(violations))
    back = {h: g for g, h in enumerate(phi)}
    for (a, b), ab in G.compose.items():
        pair = (phi[a], phi[b])
        if pair not in H.compose:
            violations.append(Violation("iso-composable", "composable pair not preserved", (a, b)))
        elif H.compose[pair] != phi[ab]:
            violations.append(Violation("iso-homomorphism", "φ(αβ) ≠ φ(α)φ(β)", (a, b)))
    for x, y in H.compose:
        if (back[x], back[y]) not in G.compose:
            violations.append(Violation("iso-reflect", "composability not reflected", (back[x], back[y])))
    return CheckReport("isomorphism", tuple(violations), {"composable": len(G.compose)})


def is_subgroupoid(G: FiniteGroupoid, H: Iterable[int]) -> bool:
    H = frozenset(H)
    if any(G.invert[h] not in H for h in H):
        return False
    return all(c in H for (a, b), c in G.compose.items() if a in H and b in H)
