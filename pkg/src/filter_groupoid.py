"""真滤子群胚模块

构造真滤子群胚 𝔽（及其超滤子、紧滤子子群胚），复合为 F·G := ↑(FG)，
仅在 d(F) = r(G) 时可复合；提供基本开集 F_s、F_{s:T}、U_s 以及相关引理的检验。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from src.algebra import InverseSemigroup, SemigroupError, mask_of
from src.filters import (
    EFilter,
    Filter,
    classify_subset,
    enumerate_filters,
    epsilon,
    is_efilter,
    principal_filter,
    up_closure,
)
from src.groupoid import (
    CheckReport,
    FiniteGroupoid,
    Violation,
    check_axioms,
    from_operations,
    is_etale_basis,
    is_local_bisection,
    is_subgroupoid,
)
from src.topology import FiniteTopology, generate_topology, patch_basis, principal_family, tight_efilters

logger = logging.getLogger(__name__)

KINDS = ("proper", "ultra", "tight")


class BadPatchSet(SemigroupError):
    pass


# ------------------ 滤子运算 ------------------

@lru_cache(maxsize=8192)
def compose_filters(F: Filter, G: Filter) -> Filter:
    """F·G := ↑(FG)，即逆半群 L 上的乘法（对任意一对滤子都有定义）"""
    S = F.ambient
    products = S.table[np.ix_(F.members, G.members)]
    return Filter(up_closure(S, mask_of(np.unique(products))), S)


def filter_inverse(F: Filter) -> Filter:
    S = F.ambient
    return Filter(mask_of(S.inv[F.members]), S)


@lru_cache(maxsize=8192)
def filter_d(F: Filter) -> Filter:
    return compose_filters(filter_inverse(F), F)


@lru_cache(maxsize=8192)
def filter_r(F: Filter) -> Filter:
    return compose_filters(F, filter_inverse(F))


def composable(F: Filter, G: Filter) -> bool:
    """(F, G) ∈ L⁽²⁾ ⟺ F⁻¹·F = G·G⁻¹"""
    return filter_d(F).carrier == filter_r(G).carrier


def eta(F: Filter) -> EFilter:
    """η(F) := d(F) ∩ E"""
    S = F.ambient
    carrier = filter_d(F).carrier & S.idempotent_mask
    assert is_efilter(S, carrier) and not carrier & 1, f"η({F}) 不是真 E-滤子"
    return EFilter(carrier, S)


# ------------------ 群胚构造 ------------------

@lru_cache(maxsize=64)
def filter_arrows(S: InverseSemigroup, kind: str = "proper") -> tuple[Filter, ...]:
    if kind in ("proper", "ultra"):
        return tuple(enumerate_filters(S, "principal", kind))
    if kind == "tight":
        tight = set(tight_efilters(S).filters)
        return tuple(F for F in enumerate_filters(S, "principal", "proper")
                     if epsilon(filter_d(F)) in tight and epsilon(filter_r(F)) in tight)
    raise ValueError(f"未知的群胚类型: {kind}")


@lru_cache(maxsize=64)
def build_filter_groupoid(S: InverseSemigroup, kind: str = "proper") -> FiniteGroupoid:
    """
    构造滤子群胚。

    参数:
        kind (str): "proper" 真滤子；"ultra" 超滤子；"tight" d 与 r 的 E-部分都是紧滤子的箭头

    返回:
        FiniteGroupoid: payload 为 Filter，复合只定义在可复合对上
    """
    G = from_operations(filter_arrows(S, kind), filter_inverse, composable, compose_filters)
    logger.debug("%s filter groupoid: %d arrows, %d units", kind, len(G.invert), len(G.units))
    return G


# ------------------ 基本开集 ------------------

@dataclass(frozen=True)
class BasicSet:
    kind: str
    s: int
    T: tuple[int, ...]
    members: frozenset[int]


def principal_sets(S: InverseSemigroup, G: FiniteGroupoid) -> list[frozenset[int]]:
    """F_s 作为箭头编号集合，按 s 编号"""
    family = principal_family(S, list(G.arrows), carrier=lambda a: G.payload[a].carrier)
    return [item.members for item in family]


def basic_set(S: InverseSemigroup, kind: str, s: int, T=(), G: FiniteGroupoid | None = None) -> BasicSet:
    """
    计算基本集 F_s、F_{s:T} 或 U_s = F_s ∩ U（真滤子群胚中的箭头编号）。

    参数:
        kind (str): "principal" | "patch" | "ultra"
        T: patch 集要避开的元素，必须含于 ↓s
    """
    G = build_filter_groupoid(S, "proper") if G is None else G
    T = tuple(sorted(int(t) for t in T))
    if kind == "patch" and mask_of(T) & ~S.down_masks[s]:
        raise BadPatchSet(f"T = {S.format_subset(mask_of(T))} 不含于 ↓{S.label(s)}")
    avoid = mask_of(T) if kind == "patch" else 0
    members = []
    for a in G.arrows:
        F = G.payload[a]
        if s not in F or F.carrier & avoid:
            continue
        if kind == "ultra" and not classify_subset(S, F.carrier).is_ultra:
            continue
        members.append(a)
    return BasicSet(kind, s, T, frozenset(members))


def arrow_topology(S: InverseSemigroup, G: FiniteGroupoid, basis: str = "patch",
                   points=None, centers=None) -> FiniteTopology:
    """
    箭头（或其子集，如单位空间）上的拓扑。

    参数:
        basis (str): "patch" 取全部 F_{s:T}；"principal" 取 F_s
        points: 箭头编号的子集，默认全部箭头
        centers: 基集中心 s 的范围，默认全部元素
    """
    points = list(G.arrows) if points is None else sorted(points)
    carrier = lambda a: G.payload[a].carrier  # noqa: E731
    if basis == "patch":
        family = patch_basis(S, points, centers, carrier)
    else:
        family = principal_family(S, points, centers, carrier)
    return generate_topology(points, [item.members for item in family])


# ------------------ 引理检验 ------------------

def check_lemma31(S: InverseSemigroup) -> CheckReport:
    """(a) 对 s ∈ F 有 F = ↑(s·d(F))；(b) F∩G ≠ ∅ 且 d(F) = d(G) ⟹ F = G"""
    arrows = filter_arrows(S, "proper")
    violations = []
    for F in arrows:
        dF = filter_d(F)
        for s in F.members:
            sd = up_closure(S, mask_of(S.table[s, dF.members]))
            if sd != F.carrier:
                violations.append(Violation("filter-translate", "F ≠ ↑(s d(F))", (str(F), S.label(s))))
    for F in arrows:
        for G in arrows:
            if F != G and F.carrier & G.carrier and filter_d(F) == filter_d(G):
                violations.append(Violation("source-separates", "distinct filters share an element and a source",
                                            (str(F), str(G))))
    return CheckReport("filter-determination", tuple(violations), {"filters": len(arrows)})


def check_lemma32(S: InverseSemigroup) -> CheckReport:
    """
    对所有 s, t 检验：
        (a) F_s⁻¹ = F_{s⁻¹}       (b) F_s F_t = F_{st}
        (c) F_s 是局部双截面      (d) d(F_s) = F_{s⁻¹s} ⊆ 单位空间
        (e) {F_s} 是 étale 基
    """
    G = build_filter_groupoid(S, "proper")
    Fs = principal_sets(S, G)
    units = G.units
    violations = []
    for s in S.elements:
        si = S.inverse(s)
        if G.inverse_set(Fs[s]) != Fs[si]:
            violations.append(Violation("basic-inverse", "F_s⁻¹ ≠ F_{s⁻¹}", (S.label(s),)))
        for t in S.elements:
            if G.product_set(Fs[s], Fs[t]) != Fs[S.mul(s, t)]:
                violations.append(Violation("basic-product", "F_s F_t ≠ F_st", (S.label(s), S.label(t))))
        if not is_local_bisection(G, Fs[s]):
            violations.append(Violation("basic-bisection", "F_s is not a local bisection", (S.label(s),)))
        source = G.source_set(Fs[s])
        if source != Fs[S.mul(si, s)] or not source <= units:
            violations.append(Violation("basic-source", "d(F_s) ≠ F_{s⁻¹s}", (S.label(s),)))
    etale = is_etale_basis(G, Fs)
    violations.extend(Violation("basic-etale", v.message, v.witness) for v in etale.violations)
    return CheckReport("principal-basics", tuple(violations), {"pairs": S.n * S.n, "sets": S.n})


def check_principal_embedding(S: InverseSemigroup) -> CheckReport:
    """s ↦ ↑s 是单射，且 ↑s·↑t = ↑(st)"""
    ups = [principal_filter(S, s) for s in S.elements]
    violations = []
    if len(set(ups)) != S.n:
        violations.append(Violation("embedding-injective", "s ↦ ↑s is not injective"))
    for s in S.elements:
        for t in S.elements:
            if compose_filters(ups[s], ups[t]) != ups[S.mul(s, t)]:
                violations.append(Violation("embedding-multiplicative", "↑s·↑t ≠ ↑(st)",
                                            (S.label(s), S.label(t))))
    return CheckReport("principal-embedding", tuple(violations), {"pairs": S.n * S.n})


def check_filter_groupoid(S: InverseSemigroup) -> CheckReport:
    """群胚公理、单位空间、子群胚关系与超滤子的理想性"""
    G = build_filter_groupoid(S, "proper")
    violations = []
    for kind in KINDS:
        H = build_filter_groupoid(S, kind)
        for v in check_axioms(H).violations:
            violations.append(Violation(f"{kind}-{v.claim}", v.message, v.witness))
        if not is_subgroupoid(G, G.arrow_set(H.payload)):
            violations.append(Violation("subgroupoid", f"{kind} arrows are not a subgroupoid of 𝔽"))

    idempotent = {F for F in G.payload if F.is_idempotent}
    if {G.payload[u] for u in G.units} != idempotent:
        violations.append(Violation("unit-space", "units ≠ idempotent proper filters"))
    for g in G.arrows:
        if G.d(G.invert[g]) != G.r(g):
            violations.append(Violation("source-range", "d(γ⁻¹) ≠ r(γ)", (G.labels[g],)))

    by_class = {F for F in G.payload if classify_subset(S, F.carrier).is_ultra}
    ultra = set(build_filter_groupoid(S, "ultra").payload)
    if by_class != ultra:
        violations.append(Violation("ultra-arrows", "ultra arrows ≠ proper arrows filtered by is_ultra"))
    for (f, u), fu in G.compose.items():
        if G.payload[u] in ultra and G.payload[fu] not in ultra:
            violations.append(Violation("ultra-ideal", "F·U is not ultra", (G.labels[f], G.labels[u])))
    return CheckReport("filter-groupoid", tuple(violations), {"arrows": len(G.invert)})
