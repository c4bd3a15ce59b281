"""同构验证模块

实现 π(F) := [s, η(F)]（s ∈ F 任取）与 π⁻¹([s, ξ]) := ↑(sξ)，
并在给定的有限逆半群上穷举验证以下结论，逐条记录结果、反例与用时：

1. 滤子枚举：主滤子枚举与子集暴力枚举一致
2. 幂等真滤子与真 E-滤子通过 ε 一一对应，且在 patch 拓扑下同胚
3. 滤子群胚与芽群胚各自的结构（公理、基本开集、作用 β 等）
4. π 是群胚同构，并且在两侧的 patch 拓扑之间同胚
5. π 把超滤子群胚映到 G_∞，限制后仍是拓扑同构，{U_s} 生成 U 上的子空间拓扑
6. 单位空间在主基下不是 Hausdorff 的充要条件，以及紧滤子与超滤子的重合
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from time import perf_counter
from typing import Callable, Mapping

from src.algebra import InverseSemigroup, SemigroupError, TooLarge, bits, mask_of
from src.filter_groupoid import (
    arrow_topology,
    basic_set,
    build_filter_groupoid,
    check_filter_groupoid,
    check_lemma31,
    check_lemma32,
    check_principal_embedding,
    eta,
    filter_d,
    filter_inverse,
    principal_sets,
)
from src.filters import (
    BRUTEFORCE_LIMIT,
    Filter,
    efilters,
    enumerate_filters,
    epsilon,
    epsilon_inv,
    up_closure,
)
from src.germ_groupoid import (
    Equivalence,
    Germ,
    GermPoint,
    beta,
    build_germ_groupoid,
    check_germ_groupoid,
    germ_class,
    germ_equiv,
    germ_topology,
    lambda_points,
    point_index,
    theta,
    theta_family,
    unit_efilters,
)
from src.groupoid import CheckReport, FiniteGroupoid, Violation, is_isomorphism
from src.topology import (
    POINT_LIMIT,
    FiniteTopology,
    check_map_topology,
    efilter_topology,
    generate_topology,
    is_hausdorff,
    patch_basis,
    patch_family,
    same_topology,
    subspace,
    tight_efilters,
)

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


# ------------------ π 与 π⁻¹ ------------------

def pi(F: Filter) -> Germ:
    """
    π(F) := [s, η(F)]，s 取 F 中下标最小的元素。

    对 F 中每个 t 断言 [t, η(F)] 是同一个芽。
    """
    S = F.ambient
    xi = eta(F)
    g = germ_class(S, GermPoint(F.members[0], xi))
    for t in F.members[1:]:
        assert GermPoint(t, xi) in g.members, f"[{S.label(t)}, {xi}] ≠ {g}"
    return g


def sxi_filter(S: InverseSemigroup, point: GermPoint) -> Filter:
    """↑(sξ) = ↑{se : e ∈ ξ}"""
    return Filter(up_closure(S, mask_of(S.mul(point.s, e) for e in point.xi.members)), S)


def pi_inv(g: Germ) -> Filter:
    """π⁻¹([s, ξ]) := ↑(sξ)；断言与代表元无关且 π∘π⁻¹ = id"""
    S = g.xi.ambient
    F = sxi_filter(S, g.rep)
    for p in g.members[1:]:
        assert sxi_filter(S, p) == F, f"↑(sξ) 依赖代表元 {p}"
    assert pi(F) == g, f"π(π⁻¹({g})) ≠ {g}"
    return F


# ------------------ 报告 ------------------

@dataclass(frozen=True)
class ClaimResult:
    """
    单条结论的验证结果。

    属性:
        claim (str): 结论名
        passed (bool): 是否成立
        witness (tuple[str, ...]): 第一个反例（不成立时）
        seconds (float): 用时
        domain (dict): 量词范围的大小
        violations (int): 反例个数
    """
    claim: str
    passed: bool
    witness: tuple[str, ...] = ()
    seconds: float = 0.0
    domain: Mapping[str, int] = field(default_factory=dict)
    violations: int = 0


@dataclass(frozen=True)
class VerificationReport:
    instance: str
    claims: tuple[ClaimResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.claims)

    @property
    def failures(self) -> list[ClaimResult]:
        return [c for c in self.claims if not c.passed]

    def claim(self, name: str) -> ClaimResult:
        for c in self.claims:
            if c.claim == name:
                return c
        raise KeyError(name)

    def to_dict(self, timings: bool = False) -> dict:
        claims = []
        for c in self.claims:
            entry = {
                "claim": c.claim,
                "passed": c.passed,
                "witness": list(c.witness),
                "domain": dict(sorted(c.domain.items())),
                "violations": c.violations,
            }
            if timings:
                entry["seconds"] = round(c.seconds, 6)
            claims.append(entry)
        return {"schema_version": SCHEMA_VERSION, "instance": self.instance, "ok": self.ok, "claims": claims}


# ------------------ 验证上下文 ------------------

class VerificationContext:
    """一次验证共享的构造结果，全部惰性求值"""

    def __init__(self, S: InverseSemigroup, equiv: Equivalence = germ_equiv,
                 bruteforce_limit: int = BRUTEFORCE_LIMIT):
        self.S = S
        self.equiv = equiv
        self.bruteforce_limit = bruteforce_limit

    @cached_property
    def filters(self) -> FiniteGroupoid:
        return build_filter_groupoid(self.S, "proper")

    @cached_property
    def ultra_filters(self) -> FiniteGroupoid:
        return build_filter_groupoid(self.S, "ultra")

    @cached_property
    def tight_filters(self) -> FiniteGroupoid:
        return build_filter_groupoid(self.S, "tight")

    @cached_property
    def germs(self) -> FiniteGroupoid:
        return build_germ_groupoid(self.S, "proper", self.equiv)

    @cached_property
    def ultra_germs(self) -> FiniteGroupoid:
        return build_germ_groupoid(self.S, "ultra", self.equiv)

    @cached_property
    def tight_germs(self) -> FiniteGroupoid:
        return build_germ_groupoid(self.S, "tight", self.equiv)

    @cached_property
    def phi(self) -> tuple[int, ...]:
        """π 在箭头编号上的表示"""
        index = point_index(self.germs)
        return tuple(index[GermPoint(F.members[0], eta(F))] for F in self.filters.payload)

    @cached_property
    def filter_space(self) -> FiniteTopology:
        return arrow_topology(self.S, self.filters, "patch")

    @cached_property
    def germ_space(self) -> FiniteTopology:
        return germ_topology(self.S, self.germs, "proper")

    @cached_property
    def idempotent_filters(self) -> list[Filter]:
        return [F for F in enumerate_filters(self.S, "principal", "idempotent") if F.is_proper]


def _relabel(T: FiniteTopology, mapping: Mapping) -> FiniteTopology:
    return generate_topology([mapping[p] for p in T.points],
                             [{mapping[q] for q in T.subset(B)} for B in T.basis])


def _filter_patch_space(S: InverseSemigroup, points, centers=None) -> FiniteTopology:
    return generate_topology(points, [item.members for item in patch_basis(S, points, centers)])


def _map_violations(report) -> list[Violation]:
    return list(report.violations)


# ------------------ 各条结论 ------------------

def _filter_enumeration(ctx: VerificationContext) -> CheckReport:
    S = ctx.S
    if S.n > ctx.bruteforce_limit:
        logger.info("bruteforce enumeration skipped: n = %d > %d", S.n, ctx.bruteforce_limit)
        return CheckReport("filter-enumeration", (), {"skipped": 1})
    violations = []
    for select in ("all", "proper", "ultra", "idempotent"):
        principal = {F.carrier for F in enumerate_filters(S, "principal", select)}
        brute = {F.carrier for F in enumerate_filters(S, "bruteforce", select, ctx.bruteforce_limit)}
        if principal != brute:
            odd = min(principal ^ brute)
            violations.append(Violation("filter-enumeration", f"{select} filters differ", (S.format_subset(odd),)))
    return CheckReport("filter-enumeration", tuple(violations), {"subsets": 2 ** S.n})


def _idempotent_correspondence(ctx: VerificationContext) -> CheckReport:
    S = ctx.S
    idem = ctx.idempotent_filters
    xis = efilters(S, "proper")
    images = [epsilon(F) for F in idem]
    violations = []
    if len(set(images)) != len(idem) or set(images) != set(xis):
        violations.append(Violation("epsilon-bijective", "ε is not a bijection onto the proper E-filters"))
        return CheckReport("idempotent-correspondence", tuple(violations))
    for F, xi in zip(idem, images):
        if epsilon_inv(xi) != F:
            violations.append(Violation("epsilon-round-trip", "ε⁻¹(ε(F)) ≠ F", (str(F),)))
    for xi in xis:
        if epsilon(epsilon_inv(xi)) != xi:
            violations.append(Violation("epsilon-round-trip", "ε(ε⁻¹(ξ)) ≠ ξ", (str(xi),)))

    source = _filter_patch_space(S, idem)
    target = efilter_topology(S, xis, "patch")
    maps = check_map_topology(source, target, dict(zip(idem, images)))
    violations.extend(_map_violations(maps))
    for T, what in ((source, "idempotent filters"), (target, "E-filters")):
        verdict = is_hausdorff(T)
        if not verdict:
            violations.append(Violation("epsilon-hausdorff", f"patch topology on {what} is not Hausdorff",
                                        tuple(str(p) for p in verdict.witness)))

    ultra = set(ctx.ultra_filters.payload)
    ultra_images = {epsilon(F) for F in idem if F in ultra}
    if ultra_images != set(efilters(S, "ultra")):
        violations.append(Violation("epsilon-ultra", "ε does not map idempotent ultrafilters onto E-ultrafilters"))
    return CheckReport("idempotent-correspondence", tuple(violations), {"filters": len(idem)})


def _unit_basis(ctx: VerificationContext) -> CheckReport:
    """幂等真滤子上，中心取遍 E 的 patch 集与中心取遍 S 的 patch 集生成相同拓扑"""
    S = ctx.S
    idem = ctx.idempotent_filters
    by_e = _filter_patch_space(S, idem, bits(S.idempotent_mask))
    by_s = _filter_patch_space(S, idem)
    violations = []
    if not same_topology(by_e, by_s):
        odd = next(F for F in idem if by_e.neighborhood(F) != by_s.neighborhood(F))
        violations.append(Violation("unit-basis", "E-centred patch sets generate a different topology", (str(odd),)))
    violations.extend(by_e.basis_report.violations)
    return CheckReport("unit-basis", tuple(violations), {"points": len(idem), "basis": len(by_e.basis)})


def _patch_refines_principal(ctx: VerificationContext) -> CheckReport:
    S = ctx.S
    T = ctx.filter_space
    violations = []
    for s, Fs in enumerate(principal_sets(S, ctx.filters)):
        if not T.is_open(Fs):
            violations.append(Violation("patch-refines-principal", "F_s is not patch-open", (S.label(s),)))
    violations.extend(T.basis_report.violations)
    return CheckReport("patch-refines-principal", tuple(violations), {"sets": S.n})


def _source_germs(ctx: VerificationContext) -> CheckReport:
    """η(F) 是真 E-滤子（超滤子时为 E-超滤子），[s, η(F)] 与 s ∈ F 无关，β_s(η(F)) = η(F⁻¹)"""
    S = ctx.S
    index = point_index(ctx.germs)
    ultra = set(ctx.ultra_filters.payload)
    ultra_xis = set(efilters(S, "ultra"))
    violations = []
    pairs = 0
    for F in ctx.filters.payload:
        xi = eta(F)
        if F in ultra and xi not in ultra_xis:
            violations.append(Violation("eta-ultra", "η(U) is not an E-ultrafilter", (str(F),)))
        classes = {index.get(GermPoint(s, xi)) for s in F.members}
        if len(classes) != 1 or None in classes:
            violations.append(Violation("germ-choice", "[s, η(F)] depends on s ∈ F", (str(F),)))
        inverse_eta = eta(filter_inverse(F))
        for s in F.members:
            pairs += 1
            if beta(S, s, xi) != inverse_eta:
                violations.append(Violation("beta-eta", "β_s(η(F)) ≠ η(F⁻¹)", (str(F), S.label(s))))
    return CheckReport("source-germs", tuple(violations), {"pairs": pairs})


def _pi_bijective(ctx: VerificationContext) -> CheckReport:
    phi = ctx.phi
    m = len(ctx.germs.invert)
    if sorted(phi) != list(range(m)):
        missing = sorted(set(range(m)) - set(phi))
        witness = tuple(str(ctx.germs.payload[g]) for g in missing[:1])
        return CheckReport("pi-bijective", (Violation("pi-bijective", "π is not a bijection 𝔽 → G₀", witness),),
                           {"filters": len(phi), "germs": m})
    return CheckReport("pi-bijective", (), {"filters": len(phi), "germs": m})


def _pi_isomorphism(ctx: VerificationContext) -> CheckReport:
    return _named("pi-isomorphism", is_isomorphism(ctx.filters, ctx.germs, ctx.phi))


def _pi_homeomorphism(ctx: VerificationContext) -> CheckReport:
    maps = check_map_topology(ctx.filter_space, ctx.germ_space, dict(enumerate(ctx.phi)))
    violations = _map_violations(maps)
    violations.extend(ctx.germ_space.basis_report.violations)
    return CheckReport("pi-homeomorphism", tuple(violations),
                       {"points": len(ctx.phi), "germ-basis": len(ctx.germ_space.basis)})


def _pi_basic_sets(ctx: VerificationContext) -> CheckReport:
    """π⁻¹(Θ(s, A)) = F_s ∩ d⁻¹(ε⁻¹(A)) 与 π(F_{s:T}) = Θ(s, ε(d(F_{s:T})))"""
    S = ctx.S
    F, G0, phi = ctx.filters, ctx.germs, ctx.phi
    back = {g: a for a, g in enumerate(phi)}
    etas = [eta(P) for P in F.payload]
    violations = []
    thetas = theta_family(S, G0, unit_efilters(S, "proper"))
    for s, A, members in thetas:
        lhs = frozenset(back[g] for g in members)
        rhs = frozenset(a for a in F.arrows if s in F.payload[a] and etas[a] in A)
        if lhs != rhs:
            violations.append(Violation("pi-theta-preimage", "π⁻¹(Θ(s,A)) ≠ F_s ∩ d⁻¹(ε⁻¹(A))",
                                        (S.label(s), "{" + ", ".join(sorted(map(str, A))) + "}")))
    patches = 0
    carrier = lambda a: F.payload[a].carrier  # noqa: E731
    for s in S.elements:
        for item in patch_family(S, list(F.arrows), s, carrier):
            patches += 1
            image = frozenset(phi[a] for a in item.members)
            sources = {epsilon(filter_d(F.payload[a])) for a in item.members}
            if image != theta(S, s, sources, G0):
                violations.append(Violation("pi-patch-image", "π(F_{s:T}) ≠ Θ(s, ε(d(F_{s:T})))",
                                            (S.label(s), S.format_subset(mask_of(item.T)))))
    return CheckReport("pi-basic-sets", tuple(violations), {"theta": len(thetas), "patches": patches})


def _pi_units(ctx: VerificationContext) -> CheckReport:
    """π 与 d、r 交换；单位 [e, ξ] 对应 ε⁻¹(ξ)；η(F·G) = η(G)；π⁻¹ 是 π 的逆"""
    F, G0, phi = ctx.filters, ctx.germs, ctx.phi
    violations = []
    for a in F.arrows:
        P = F.payload[a]
        if phi[F.d(a)] != G0.d(phi[a]) or phi[F.r(a)] != G0.r(phi[a]):
            violations.append(Violation("pi-source-range", "π∘d ≠ d∘π", (str(P),)))
        if G0.payload[G0.d(phi[a])].xi != epsilon(F.payload[F.d(a)]):
            violations.append(Violation("pi-unit-identification", "d(π(F)) ≠ [e, ε(d(F))]", (str(P),)))
        g = G0.payload[phi[a]]
        if any(sxi_filter(ctx.S, p) != P for p in g.members):
            violations.append(Violation("pi-inverse", "π⁻¹(π(F)) ≠ F", (str(P),)))
    for (a, b), ab in F.compose.items():
        if eta(F.payload[ab]) != eta(F.payload[b]):
            violations.append(Violation("eta-product", "η(F·G) ≠ η(G)", (F.labels[a], F.labels[b])))
    return CheckReport("pi-units", tuple(violations), {"arrows": len(phi), "composable": len(F.compose)})


def _ultra_ids(ctx: VerificationContext) -> tuple[list[int], list[int]]:
    """U 的箭头在 𝔽 中的编号，及其 π 像在 G_∞ 中的编号"""
    F, G0, Ginf = ctx.filters, ctx.germs, ctx.ultra_germs
    in_filters = [F.index(U) for U in ctx.ultra_filters.payload]
    in_germs = [Ginf.index(G0.payload[ctx.phi[a]]) for a in in_filters]
    return in_filters, in_germs


def _ultra_image(ctx: VerificationContext) -> CheckReport:
    G0 = ctx.germs
    image = {G0.payload[ctx.phi[ctx.filters.index(U)]] for U in ctx.ultra_filters.payload}
    target = set(ctx.ultra_germs.payload)
    violations = []
    if image != target:
        odd = sorted(map(str, image ^ target))[:1]
        violations.append(Violation("ultra-image", "π(U) ≠ G_∞", tuple(odd)))
    return CheckReport("ultra-image", tuple(violations), {"ultra": len(target)})


def _ultra_restriction(ctx: VerificationContext) -> CheckReport:
    """π|_U: U → G_∞ 是同构与同胚；两侧的 patch 拓扑都是子空间拓扑"""
    S = ctx.S
    U, Ginf = ctx.ultra_filters, ctx.ultra_germs
    in_filters, in_germs = _ultra_ids(ctx)
    violations = list(is_isomorphism(U, Ginf, in_germs).violations)

    own_filters = arrow_topology(S, U, "patch")
    own_germs = germ_topology(S, Ginf, "ultra")
    violations.extend(_map_violations(check_map_topology(own_filters, own_germs, dict(enumerate(in_germs)))))

    as_filters = _relabel(own_filters, dict(enumerate(in_filters)))
    if not same_topology(as_filters, subspace(ctx.filter_space, in_filters)):
        violations.append(Violation("ultra-subspace", "patch topology on U is not the subspace topology"))
    germ_ids = {a: ctx.germs.index(Ginf.payload[a]) for a in Ginf.arrows}
    as_germs = _relabel(own_germs, germ_ids)
    if not same_topology(as_germs, subspace(ctx.germ_space, germ_ids.values())):
        violations.append(Violation("ultra-subspace", "patch topology on G_∞ is not the subspace topology"))
    return CheckReport("ultra-restriction", tuple(violations), {"ultra": len(in_filters)})


def _ultra_basis(ctx: VerificationContext) -> CheckReport:
    """{U_s : s ∈ S} 生成 U 上的子空间 patch 拓扑"""
    S = ctx.S
    in_filters, _ = _ultra_ids(ctx)
    basis = [basic_set(S, "ultra", s, G=ctx.filters).members for s in S.elements]
    generated = generate_topology(sorted(in_filters), basis)
    violations = list(generated.basis_report.violations)
    if not same_topology(generated, subspace(ctx.filter_space, in_filters)):
        violations.append(Violation("ultra-basis", "{U_s} does not generate the subspace topology"))
    return CheckReport("ultra-basis", tuple(violations), {"sets": S.n})


def _unit_hausdorff(ctx: VerificationContext) -> CheckReport:
    """主基下单位空间不是 Hausdorff ⟺ 存在不同的 e, f ∈ E 使 ef ≠ 0"""
    S, F = ctx.S, ctx.filters
    T = arrow_topology(S, F, "principal", points=F.units)
    verdict = is_hausdorff(T)
    nonzero = [e for e in bits(S.idempotent_mask) if e != S.zero]
    meeting = [(e, f) for e in nonzero for f in nonzero if e < f and S.mul(e, f) != S.zero]
    violations = []
    if verdict.hausdorff == bool(meeting):
        witness = tuple(F.labels[p] for p in verdict.witness) if verdict.witness else \
            tuple(S.label(x) for x in meeting[0])
        violations.append(Violation("unit-hausdorff", "Hausdorff verdict disagrees with the ef ≠ 0 criterion",
                                    witness))
    return CheckReport("unit-hausdorff", tuple(violations),
                       {"units": len(F.units), "meeting-pairs": len(meeting),
                        "non-hausdorff": int(not verdict.hausdorff)})


def _tight_filters(ctx: VerificationContext) -> CheckReport:
    """T̂(E) = Û(E)；由 T̂(E) 得到的紧滤子箭头 = π⁻¹(G_tight) = 超滤子箭头"""
    S = ctx.S
    F, G0 = ctx.filters, ctx.germs
    tight = tight_efilters(S)
    violations = []
    if not tight.compactable:
        violations.append(Violation("compactable", "T̂(E) ≠ Û(E)"))
    direct = F.arrow_set(ctx.tight_filters.payload)
    tight_germs = set(ctx.tight_germs.payload)
    through_pi = frozenset(a for a in F.arrows if G0.payload[ctx.phi[a]] in tight_germs)
    if direct != through_pi:
        violations.append(Violation("tight-preimage", "tight arrows ≠ π⁻¹(G_tight)"))
    if direct != F.arrow_set(ctx.ultra_filters.payload):
        violations.append(Violation("tight-ultra", "tight arrows ≠ ultrafilter arrows"))
    if tight_germs != set(ctx.ultra_germs.payload):
        violations.append(Violation("tight-ultra", "G_tight ≠ G_∞"))
    return CheckReport("tight-filters", tuple(violations),
                       {"tight": len(tight.filters), "ultra": len(tight.ultra), "compactable": int(tight.compactable)})


def _named(name: str, report: CheckReport) -> CheckReport:
    return CheckReport(name, report.violations, report.domain)


CLAIMS: tuple[tuple[str, Callable[[VerificationContext], CheckReport]], ...] = (
    ("filter-enumeration", _filter_enumeration),
    ("idempotent-correspondence", _idempotent_correspondence),
    ("unit-basis", _unit_basis),
    ("patch-refines-principal", _patch_refines_principal),
    ("filter-determination", lambda ctx: check_lemma31(ctx.S)),
    ("principal-basics", lambda ctx: check_lemma32(ctx.S)),
    ("principal-embedding", lambda ctx: check_principal_embedding(ctx.S)),
    ("filter-groupoid", lambda ctx: check_filter_groupoid(ctx.S)),
    ("germ-groupoid", lambda ctx: check_germ_groupoid(ctx.S, ctx.equiv)),
    ("source-germs", _source_germs),
    ("pi-bijective", _pi_bijective),
    ("pi-isomorphism", _pi_isomorphism),
    ("pi-homeomorphism", _pi_homeomorphism),
    ("pi-basic-sets", _pi_basic_sets),
    ("pi-units", _pi_units),
    ("ultra-image", _ultra_image),
    ("ultra-restriction", _ultra_restriction),
    ("ultra-basis", _ultra_basis),
    ("unit-hausdorff", _unit_hausdorff),
    ("tight-filters", _tight_filters),
)


def _run_claim(ctx: VerificationContext, name: str, check: Callable) -> ClaimResult:
    start = perf_counter()
    try:
        report = check(ctx)
    except TooLarge:
        raise
    except (SemigroupError, AssertionError, KeyError, ValueError) as exc:
        report = CheckReport(name, (Violation(name, f"{type(exc).__name__}: {exc}"),))
    seconds = perf_counter() - start
    first = report.first
    witness = () if first is None else (first.claim, first.message) + tuple(str(w) for w in first.witness)
    logger.info("%-26s %s (%.3f s)", name, "PASS" if report.ok else "FAIL", seconds)
    return ClaimResult(name, report.ok, witness, seconds, dict(report.domain), len(report.violations))


def verify_all(S: InverseSemigroup, *, equiv: Equivalence = germ_equiv,
               bruteforce_limit: int = BRUTEFORCE_LIMIT, point_limit: int = POINT_LIMIT,
               instance: str = "") -> VerificationReport:
    """
    穷举验证全部结论。

    参数:
        S: 带零元的有限逆半群
        equiv: 芽等价判定（变异测试时可替换）
        bruteforce_limit (int): 暴力枚举滤子的元素个数上限
        point_limit (int): Λ 的点数上限，超出时抛出 TooLarge
        instance (str): 报告中的实例名

    返回:
        VerificationReport: 按固定顺序排列的各条结论；构造过程中的异常记为对应结论不成立
    """
    size = len(lambda_points(S, unit_efilters(S, "proper")))
    if size > point_limit:
        raise TooLarge(f"Λ 有 {size} 个点，超过上限 {point_limit}")
    ctx = VerificationContext(S, equiv, bruteforce_limit)
    claims = tuple(_run_claim(ctx, name, check) for name, check in CLAIMS)
    report = VerificationReport(instance, claims)
    logger.info("verification of %s: %s", instance or f"{S.n}-element semigroup",
                "PASS" if report.ok else f"{len(report.failures)} claims FAIL")
    return report
