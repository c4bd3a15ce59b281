"""芽群胚模块

S 在真 E-滤子上的标准作用 β_s(ξ) = ↑{ses⁻¹ : e ∈ ξ} ∩ E，
点集 Λ = {(s, ξ) : s⁻¹s ∈ ξ} 上的芽等价 (s,ξ) ~ (t,ξ) ⟺ 存在 e ∈ ξ 使 se = te，
以及由此得到的真芽群胚 G₀ 和它在 T̂(E)、Û(E) 上的约化 G_tight、G_∞。

等价类的划分先按 ξ 分组，再用 scipy 求等价关系图的连通分量。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from src.algebra import InverseSemigroup, SemigroupError, bits
from src.filters import EFilter, efilters, up_closure
from src.groupoid import (
    CheckReport,
    FiniteGroupoid,
    GroupoidError,
    Violation,
    check_axioms,
    is_subgroupoid,
)
from src.topology import FiniteTopology, generate_topology, patch_basis, tight_efilters

logger = logging.getLogger(__name__)

KINDS = ("proper", "ultra", "tight")


class DomainError(SemigroupError):
    pass


class NotComposable(SemigroupError):
    pass


class BadBase(SemigroupError):
    pass


@dataclass(frozen=True)
class GermPoint:
    """Λ 中的点 (s, ξ)"""
    s: int
    xi: EFilter

    @property
    def key(self) -> tuple[int, tuple[int, ...]]:
        return self.s, tuple(self.xi.members)

    def __str__(self) -> str:
        return f"({self.xi.ambient.label(self.s)}, {self.xi})"


@dataclass(frozen=True, eq=False)
class Germ:
    """
    芽 [s, ξ]：Λ 中的一个等价类。

    属性:
        rep (GermPoint): 规范代表元，按 (元素下标, 载体下标序列) 取字典序最小
        members (tuple[GermPoint, ...]): 类中全部点
    """
    rep: GermPoint
    members: tuple[GermPoint, ...]

    @property
    def s(self) -> int:
        return self.rep.s

    @property
    def xi(self) -> EFilter:
        return self.rep.xi

    def __eq__(self, other) -> bool:
        return isinstance(other, Germ) and self.rep == other.rep

    def __hash__(self) -> int:
        return hash(self.rep)

    def __str__(self) -> str:
        return f"[{self.xi.ambient.label(self.s)}, {self.xi}]"


def _germ_from(points: Iterable[GermPoint]) -> Germ:
    members = tuple(sorted(points, key=lambda p: p.key))
    return Germ(members[0], members)


# ------------------ 作用 β 与芽等价 ------------------

def in_domain(S: InverseSemigroup, s: int, xi: EFilter) -> bool:
    """ξ ∈ F^E_{s⁻¹s}"""
    return S.mul(S.inverse(s), s) in xi


def beta(S: InverseSemigroup, s: int, xi: EFilter) -> EFilter:
    """
    标准作用 β_s(ξ) := {f ∈ E : ses⁻¹ ≤ f 对某个 e ∈ ξ}。

    参数:
        s (int): 作用元素，要求 s⁻¹s ∈ ξ
        xi (EFilter): 真 E-滤子

    返回:
        EFilter: β_s(ξ)，包含 ss⁻¹
    """
    if not in_domain(S, s, xi):
        raise DomainError(f"{S.label(s)}⁻¹{S.label(s)} ∉ {xi}")
    si = S.inverse(s)
    conj = 0
    for e in xi.members:
        conj |= 1 << S.mul(S.mul(s, e), si)
    return EFilter(up_closure(S, conj) & S.idempotent_mask, S)


def germ_equiv(S: InverseSemigroup, p: GermPoint, q: GermPoint) -> bool:
    """(s,ξ) ~ (t,η) ⟺ ξ = η 且存在 e ∈ ξ 使 se = te；任一点不在 Λ 中时为 False"""
    if not (in_domain(S, p.s, p.xi) and in_domain(S, q.s, q.xi)):
        return False
    if p.xi.carrier != q.xi.carrier:
        return False
    return any(S.mul(p.s, e) == S.mul(q.s, e) for e in p.xi.members)


Equivalence = Callable[[InverseSemigroup, GermPoint, GermPoint], bool]


def lambda_points(S: InverseSemigroup, xis: Iterable[EFilter]) -> list[GermPoint]:
    return [GermPoint(s, xi) for xi in xis for s in S.elements if in_domain(S, s, xi)]


def germ_class(S: InverseSemigroup, point: GermPoint, equiv: Equivalence = germ_equiv) -> Germ:
    """直接扫描 S 得到 [s, ξ]"""
    if not in_domain(S, point.s, point.xi):
        raise DomainError(f"{point} 不在 Λ 中")
    return _germ_from(GermPoint(t, point.xi) for t in S.elements
                      if in_domain(S, t, point.xi) and equiv(S, point, GermPoint(t, point.xi)))


def invert_germ(g: Germ) -> Germ:
    """[s, ξ]⁻¹ := [s⁻¹, β_s(ξ)]"""
    S = g.xi.ambient
    return germ_class(S, GermPoint(S.inverse(g.s), beta(S, g.s, g.xi)))


def germ_composable(g: Germ, h: Germ) -> bool:
    S = h.xi.ambient
    return g.xi == beta(S, h.s, h.xi)


def compose_germs(g: Germ, h: Germ) -> Germ:
    """[s, β_t(η)]·[t, η] := [st, η]"""
    if not germ_composable(g, h):
        raise NotComposable(f"{g} 与 {h} 不可复合")
    S = h.xi.ambient
    return germ_class(S, GermPoint(S.mul(g.s, h.s), h.xi))


# ------------------ 群胚构造 ------------------

@lru_cache(maxsize=64)
def unit_efilters(S: InverseSemigroup, kind: str = "proper") -> tuple[EFilter, ...]:
    if kind == "proper":
        return tuple(efilters(S, "proper"))
    if kind == "ultra":
        return tuple(efilters(S, "ultra"))
    if kind == "tight":
        return tight_efilters(S).filters
    raise ValueError(f"未知的群胚类型: {kind}")


def partition_points(S: InverseSemigroup, points: Sequence[GermPoint],
                     equiv: Equivalence = germ_equiv) -> list[Germ]:
    """按 ξ 分组后取等价关系图的弱连通分量"""
    if not points:
        return []
    by_xi: dict[EFilter, list[int]] = {}
    for i, p in enumerate(points):
        by_xi.setdefault(p.xi, []).append(i)
    rows, cols = [], []
    for idx in by_xi.values():
        for i in idx:
            for j in idx:
                if equiv(S, points[i], points[j]):
                    rows.append(i)
                    cols.append(j)
    m = len(points)
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(m, m))
    _, labels = connected_components(graph, directed=True, connection="weak")
    classes: dict[int, list[GermPoint]] = {}
    for p, c in zip(points, labels):
        classes.setdefault(int(c), []).append(p)
    return sorted((_germ_from(ps) for ps in classes.values()), key=lambda g: g.rep.key)


@lru_cache(maxsize=64)
def build_germ_groupoid(S: InverseSemigroup, kind: str = "proper",
                        equiv: Equivalence = germ_equiv) -> FiniteGroupoid:
    """
    构造芽群胚。

    参数:
        kind (str): "proper" 为 G₀；"tight" 为 T̂(E) 上的约化；"ultra" 为 Û(E) 上的约化 G_∞
        equiv: 芽等价判定，默认 germ_equiv

    返回:
        FiniteGroupoid: payload 为 Germ，([s,ξ],[t,η]) 可复合 ⟺ ξ = β_t(η)
    """
    xis = unit_efilters(S, kind)
    germs = partition_points(S, lambda_points(S, xis), equiv)
    class_of = {p: a for a, g in enumerate(germs) for p in g.members}

    def lookup(p: GermPoint) -> Germ:
        try:
            return germs[class_of[p]]
        except KeyError:
            raise GroupoidError(f"{p} 不在 {kind} 芽群胚的点集中") from None

    def invert(g: Germ) -> Germ:
        return lookup(GermPoint(S.inverse(g.s), beta(S, g.s, g.xi)))

    def compose(g: Germ, h: Germ) -> Germ:
        return lookup(GermPoint(S.mul(g.s, h.s), h.xi))

    index = {g: a for a, g in enumerate(germs)}
    arrows = []
    invert_ids = []
    for g in germs:
        arrows.append(g)
        invert_ids.append(index[invert(g)])
    table = {}
    for i, g in enumerate(germs):
        for j, h in enumerate(germs):
            if germ_composable(g, h):
                table[(i, j)] = index[compose(g, h)]
    G = FiniteGroupoid(table, tuple(invert_ids), tuple(germs), tuple(str(g) for g in germs))
    logger.debug("%s germ groupoid: %d points, %d germs, %d units",
                 kind, len(class_of), len(germs), len(G.units))
    return G


@lru_cache(maxsize=64)
def point_index(G: FiniteGroupoid) -> dict[GermPoint, int]:
    """Λ 中的点 ↦ 所在芽的箭头编号"""
    return {p: a for a in G.arrows for p in G.payload[a].members}


# ------------------ 基本开集 ------------------

def theta(S: InverseSemigroup, s: int, A: Iterable[EFilter], G: FiniteGroupoid | None = None) -> frozenset[int]:
    """
    Θ(s, A) := {[s, ξ] : ξ ∈ A}，返回箭头编号。

    参数:
        A: E-滤子集合，要求 A ⊆ F^E_{s⁻¹s}
        G: 芽群胚，默认 G₀；不在 G 中的 ξ 被略去
    """
    A = list(A)
    bad = [xi for xi in A if not in_domain(S, s, xi)]
    if bad:
        raise BadBase(f"{bad[0]} 不含 {S.label(s)}⁻¹{S.label(s)}")
    G = build_germ_groupoid(S, "proper") if G is None else G
    index = point_index(G)
    return frozenset(index[GermPoint(s, xi)] for xi in A if GermPoint(s, xi) in index)


def theta_family(S: InverseSemigroup, G: FiniteGroupoid, xis: Sequence[EFilter]) -> list[tuple[int, frozenset, frozenset]]:
    """
    芽拓扑的基 {Θ(s, A)}：A 取遍 ξ 上的 E-patch 基集与 F^E_{s⁻¹s} 之交。

    返回:
        list[tuple]: (s, A, Θ(s, A))
    """
    family = patch_basis(S, list(xis), bits(S.idempotent_mask))
    bases = {item.members for item in family}
    out = []
    for s in S.elements:
        for A in bases:
            A = frozenset(xi for xi in A if in_domain(S, s, xi))
            out.append((s, A, theta(S, s, A, G)))
    return out


def germ_topology(S: InverseSemigroup, G: FiniteGroupoid, kind: str = "proper") -> FiniteTopology:
    family = theta_family(S, G, unit_efilters(S, kind))
    return generate_topology(list(G.arrows), [members for _, _, members in family])


# ------------------ 结构检验 ------------------

def check_germ_groupoid(S: InverseSemigroup, equiv: Equivalence = germ_equiv) -> CheckReport:
    """
    检验芽群胚的构造：
        芽等价是等价关系；复合与求逆不依赖代表元；
        β_{s⁻¹}∘β_s = id；β_{st} = β_s∘β_t；Û(E) 与 T̂(E) 在 β 下不变；
        三种群胚满足公理，G_tight 与 G_∞ 是 G₀ 的子群胚，单位为 {[e, ξ] : e ∈ ξ}。
    """
    xis = unit_efilters(S, "proper")
    points = lambda_points(S, xis)
    violations = []

    def fail(claim, message, *witness):
        violations.append(Violation(claim, message, tuple(str(w) for w in witness)))

    # Λ 上完整的关系矩阵，四项检查都对全部有序对（和三元组）穷举
    m = len(points)
    relation = np.array([[bool(equiv(S, p, q)) for q in points] for p in points], dtype=bool).reshape(m, m)
    xi_ids = {xi: i for i, xi in enumerate(xis)}
    group = np.array([xi_ids[p.xi] for p in points], dtype=np.int64)
    same_xi = group[:, None] == group[None, :]
    for i, j in np.argwhere(relation & ~same_xi):
        fail("germ-carrier", "~ relates points over different ξ", points[i], points[j])
    for i in np.flatnonzero(~relation.diagonal()):
        fail("germ-reflexive", "(s,ξ) ≁ (s,ξ)", points[i])
    for i, j in np.argwhere(relation != relation.T):
        fail("germ-symmetric", "~ is not symmetric", points[i], points[j])
    rel = relation.astype(np.int64)
    for i, k in np.argwhere(((rel @ rel) > 0) & ~relation):
        j = int(np.flatnonzero(relation[i] & relation[:, k])[0])
        fail("germ-transitive", "~ is not transitive", points[i], points[j], points[k])

    G = build_germ_groupoid(S, "proper", equiv)
    index = point_index(G)
    for g in G.arrows:
        expected = G.invert[g]
        for p in G.payload[g].members:
            q = GermPoint(S.inverse(p.s), beta(S, p.s, p.xi))
            if index.get(q) != expected:
                fail("germ-inverse-well-defined", "inverse depends on the representative", p)
    for (g, h), gh in G.compose.items():
        for p in G.payload[g].members:
            for q in G.payload[h].members:
                if p.xi != beta(S, q.s, q.xi):
                    fail("germ-composable-well-defined", "composability depends on the representative", p, q)
                elif index.get(GermPoint(S.mul(p.s, q.s), q.xi)) != gh:
                    fail("germ-compose-well-defined", "product depends on the representatives", p, q)

    for p in points:
        image = beta(S, p.s, p.xi)
        if beta(S, S.inverse(p.s), image) != p.xi:
            fail("beta-inverse", "β_{s⁻¹}(β_s(ξ)) ≠ ξ", p)
        for t in S.elements:
            if not in_domain(S, t, image):
                continue
            st = S.mul(t, p.s)
            if not in_domain(S, st, p.xi) or beta(S, st, p.xi) != beta(S, t, image):
                fail("beta-action", "β_{ts} ≠ β_t∘β_s", S.label(t), p)

    for kind in ("ultra", "tight"):
        invariant = set(unit_efilters(S, kind))
        for p in points:
            if p.xi in invariant and beta(S, p.s, p.xi) not in invariant:
                fail(f"{kind}-invariant", f"β_s leaves the {kind} E-filters", p)

    for kind in KINDS:
        H = build_germ_groupoid(S, kind, equiv)
        for v in check_axioms(H).violations:
            violations.append(Violation(f"{kind}-{v.claim}", v.message, v.witness))
        if not is_subgroupoid(G, G.arrow_set(H.payload)):
            fail("subgroupoid", f"{kind} germs are not a subgroupoid of G₀")

    units = {index[GermPoint(e, xi)] for xi in xis for e in xi.members}
    if units != set(G.units):
        fail("unit-space", "units ≠ {[e,ξ] : e ∈ ξ}")
    return CheckReport("germ-groupoid", tuple(violations), {"points": len(points), "germs": len(G.invert)})
