"""有限拓扑模块

由基生成有限拓扑空间，计算闭包与 Hausdorff 性，构造滤子与 E-滤子上的 patch 拓扑，
把紧滤子 T̂(E) 作为 E-超滤子的闭包求出，并检验映射的连续性与开性。

有限拓扑由每个点的最小开邻域 N(x)（包含 x 的全部基集之交）完全确定：
U 是开集 ⟺ 对所有 x ∈ U 有 N(x) ⊆ U。判定都基于 N(x)，开集族只在需要时物化。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from operator import attrgetter
from typing import Callable, Hashable, Iterable, Mapping, NamedTuple, Sequence

from src.algebra import InverseSemigroup, TooLarge, bits
from src.filters import EFilter, efilters
from src.groupoid import CheckReport, Violation

logger = logging.getLogger(__name__)

POINT_LIMIT = 2 ** 14
OPEN_SET_LIMIT = 2 ** 16


@dataclass(frozen=True, eq=False)
class FiniteTopology:
    """
    点集上由基生成的拓扑。

    属性:
        points (tuple): 点（滤子、E-滤子或箭头编号）
        basis (tuple[int, ...]): 基集，点下标上的位掩码
        neighborhoods (tuple[int, ...]): 每个点的最小开邻域 N(x)
        basis_report (CheckReport): 基判据的检验结果
    """
    points: tuple
    basis: tuple[int, ...]
    neighborhoods: tuple[int, ...]
    basis_report: CheckReport

    @cached_property
    def position(self) -> dict:
        return {p: i for i, p in enumerate(self.points)}

    @property
    def full(self) -> int:
        return (1 << len(self.points)) - 1

    def mask(self, subset: Iterable[Hashable]) -> int:
        out = 0
        for p in subset:
            out |= 1 << self.position[p]
        return out

    def subset(self, mask: int) -> frozenset:
        return frozenset(self.points[i] for i in bits(mask))

    def is_open_mask(self, mask: int) -> bool:
        return all(self.neighborhoods[i] & ~mask == 0 for i in bits(mask))

    def is_open(self, subset: Iterable[Hashable]) -> bool:
        return self.is_open_mask(self.mask(subset))

    def neighborhood(self, point: Hashable) -> frozenset:
        return self.subset(self.neighborhoods[self.position[point]])

    @cached_property
    def open_masks(self) -> frozenset[int]:
        """全部开集：最小开邻域的一切并（含空集）"""
        opens = {0}
        for nx in set(self.neighborhoods):
            opens |= {o | nx for o in opens}
            if len(opens) > OPEN_SET_LIMIT:
                raise TooLarge(f"开集个数超过 {OPEN_SET_LIMIT}")
        return frozenset(opens)

    @property
    def opens(self) -> frozenset[frozenset]:
        return frozenset(self.subset(m) for m in self.open_masks)


def _topology_from_masks(points: tuple, masks: Sequence[int]) -> FiniteTopology:
    p = len(points)
    full = (1 << p) - 1
    basis = tuple(dict.fromkeys(masks))
    members = set(basis)
    neighborhoods = []
    violations = []
    for x in range(p):
        around = [B for B in basis if B >> x & 1]
        nx = full
        for B in around:
            nx &= B
        neighborhoods.append(nx)
        if not around:
            violations.append(Violation("basis-cover", "point lies in no basis set", (points[x],)))
        elif nx not in members:
            witness = _uncovered_pair(basis, around, x)
            violations.append(Violation("basis-intersection",
                                        "basic intersection is not a union of basics", (points[x],) + witness))
    report = CheckReport("basis", tuple(violations), {"points": p, "basis": len(basis)})
    logger.debug("topology on %d points from %d basic sets", p, len(basis))
    return FiniteTopology(points, basis, tuple(neighborhoods), report)


def _uncovered_pair(basis, around, x) -> tuple:
    for i, B1 in enumerate(around):
        for B2 in around[i:]:
            inter = B1 & B2
            if not any(B >> x & 1 and B & ~inter == 0 for B in basis):
                return basis.index(B1), basis.index(B2)
    return ()


def generate_topology(points: Sequence[Hashable], basis: Iterable[Iterable[Hashable]],
                      limit: int = POINT_LIMIT) -> FiniteTopology:
    """
    由基生成拓扑。

    参数:
        points: 点的序列（可哈希、互不相同）
        basis: 基集族，每个基集是点的集合
        limit (int): 点数上限

    返回:
        FiniteTopology: 基判据不成立时照常生成，违例记录在 basis_report 中
    """
    points = tuple(points)
    if len(points) > limit:
        raise TooLarge(f"点数 {len(points)} 超过上限 {limit}")
    position = {p: i for i, p in enumerate(points)}
    masks = []
    for B in basis:
        m = 0
        for q in B:
            m |= 1 << position[q]
        masks.append(m)
    return _topology_from_masks(points, masks)


def subspace(T: FiniteTopology, subset: Iterable[Hashable]) -> FiniteTopology:
    wanted = set(subset)
    sub = [p for p in T.points if p in wanted]
    keep = T.mask(sub)
    basis = [T.subset(B & keep) for B in T.basis]
    return generate_topology(sub, basis)


def same_topology(T1: FiniteTopology, T2: FiniteTopology) -> bool:
    if set(T1.points) != set(T2.points):
        return False
    return all(T1.neighborhood(p) == T2.neighborhood(p) for p in T1.points)


@dataclass(frozen=True)
class HausdorffVerdict:
    hausdorff: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.hausdorff


def is_hausdorff(T: FiniteTopology) -> HausdorffVerdict:
    """不同的点有不相交的基本邻域；否则给出不可分离的点对"""
    N = T.neighborhoods
    for x in range(len(T.points)):
        for y in range(x + 1, len(T.points)):
            if N[x] & N[y]:
                return HausdorffVerdict(False, (T.points[x], T.points[y]))
    return HausdorffVerdict(True)


def closure(T: FiniteTopology, A: Iterable[Hashable]) -> frozenset:
    """{x : 每个包含 x 的基本开集都与 A 相交}"""
    mask = T.mask(A)
    return frozenset(p for i, p in enumerate(T.points) if T.neighborhoods[i] & mask)


@dataclass(frozen=True)
class MapReport:
    continuous: bool
    open: bool
    violations: tuple[Violation, ...] = ()

    @property
    def homeomorphic(self) -> bool:
        return self.continuous and self.open


def check_map_topology(T_src: FiniteTopology, T_dst: FiniteTopology,
                       f: Mapping[Hashable, Hashable]) -> MapReport:
    """
    检验点映射 f 的连续性与开性。

    连续：每个 N(y) 的原像是开集；开：每个 N(x) 的像是开集。
    最小开邻域构成拓扑的基，因此只需检验它们。
    """
    image = [T_dst.position[f[p]] for p in T_src.points]
    violations = []
    continuous = True
    for y, ny in enumerate(T_dst.neighborhoods):
        pre = 0
        for x, fx in enumerate(image):
            if ny >> fx & 1:
                pre |= 1 << x
        if not T_src.is_open_mask(pre):
            continuous = False
            violations.append(Violation("continuity", "preimage of an open set is not open",
                                        (T_dst.points[y], tuple(sorted(T_src.subset(pre), key=str)))))
    is_open = True
    for x, nx in enumerate(T_src.neighborhoods):
        img = 0
        for i in bits(nx):
            img |= 1 << image[i]
        if not T_dst.is_open_mask(img):
            is_open = False
            violations.append(Violation("openness", "image of an open set is not open",
                                        (T_src.points[x], tuple(sorted(T_dst.subset(img), key=str)))))
    return MapReport(continuous, is_open, tuple(violations))


# ------------------ patch 拓扑 ------------------

class BasicFamilyItem(NamedTuple):
    s: int
    T: tuple[int, ...]
    members: frozenset


def principal_family(S: InverseSemigroup, points: Sequence, centers: Iterable[int] | None = None,
                     carrier: Callable = attrgetter("carrier")) -> list[BasicFamilyItem]:
    """对每个中心 s 给出 {x : s ∈ x}"""
    carriers = [carrier(p) for p in points]
    centers = S.elements if centers is None else centers
    return [BasicFamilyItem(s, (), frozenset(p for p, c in zip(points, carriers) if c >> s & 1))
            for s in centers]


def patch_family(S: InverseSemigroup, points: Sequence, s: int,
                 carrier: Callable = attrgetter("carrier")) -> list[BasicFamilyItem]:
    """
    枚举中心 s 的全部不同的 patch 集 {x : s ∈ x ⊆ S∖T}，T 取遍 ↓s 的子集。

    只有会改变结果的 t 才参与组合；每个不同的集合保留一个代表 T。
    """
    carriers = [carrier(p) for p in points]
    contains = [sum(1 << i for i, c in enumerate(carriers) if c >> a & 1) for a in range(S.n)]
    base = contains[s]
    found = {base: ()}
    for t in bits(S.down_masks[s]):
        cut = contains[t] & base
        if cut == 0:
            continue
        for mask, T in list(found.items()):
            found.setdefault(mask & ~cut, T + (t,))
    return [BasicFamilyItem(s, T, frozenset(points[i] for i in bits(mask))) for mask, T in found.items()]


def patch_basis(S: InverseSemigroup, points: Sequence, centers: Iterable[int] | None = None,
                carrier: Callable = attrgetter("carrier")) -> list[BasicFamilyItem]:
    centers = S.elements if centers is None else centers
    out = []
    for s in centers:
        out.extend(patch_family(S, points, s, carrier))
    return out


def efilter_topology(S: InverseSemigroup, xis: Sequence[EFilter], basis: str = "patch") -> FiniteTopology:
    """E-滤子上的拓扑：patch 基 F^E_{e:X} 或主基 F^E_e，中心取遍 E"""
    centers = bits(S.idempotent_mask)
    family = patch_basis(S, xis, centers) if basis == "patch" else principal_family(S, xis, centers)
    return generate_topology(xis, [item.members for item in family])


@dataclass(frozen=True)
class TightSet:
    filters: tuple[EFilter, ...]
    ultra: tuple[EFilter, ...]

    @property
    def compactable(self) -> bool:
        return set(self.filters) == set(self.ultra)


def tight_efilters(S: InverseSemigroup) -> TightSet:
    """
    T̂(E)：E-超滤子在真 E-滤子 patch 拓扑中的闭包。

    返回:
        TightSet: 紧 E-滤子、E-超滤子与可紧化判定 T̂(E) = Û(E)
    """
    xis = efilters(S, "proper")
    ultra = efilters(S, "ultra")
    T = efilter_topology(S, xis)
    tight = closure(T, ultra)
    ordered = tuple(xi for xi in xis if xi in tight)
    logger.debug("tight E-filters: %d of %d (ultra %d)", len(ordered), len(xis), len(ultra))
    return TightSet(ordered, tuple(ultra))
