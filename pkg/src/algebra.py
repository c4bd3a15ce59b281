"""有限逆半群模块

本模块负责有限逆半群（带零元）的表示、验证与标准样例构造，包括：
1. 乘法表的公理验证（结合律、逆元存在、幂等元交换、零元）
2. 幂等元集合 E 与自然偏序 a ≤ b ⟺ a = aa⁻¹b
3. 标准样例族：Brandt 半群、对称逆幺半群、链、交半格
4. 零元的添加与由生成元得到的逆子半群

元素统一用 0..n-1 的整数下标表示，验证之后零元总是下标 0。
子集用 Python 整数位掩码表示（第 i 位为 1 表示元素 i 属于该子集）。

主要函数：
- validate_inverse_semigroup: 验证乘法表并返回规范化的逆半群
- build_standard: 构造标准样例
- idempotents / natural_leq / order_relation: 幂等元与自然偏序
- order_properties: 自然偏序与逆元基本性质的穷举检验
- adjoin_zero / inverse_closure_subsemigroup: 构造新的逆半群
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

logger = logging.getLogger(__name__)

# 乘法表规模上限，所有下游枚举都是指数级的
MAX_ELEMENTS = 256


class SemigroupError(Exception):
    """本项目所有领域错误的基类"""


class MalformedTable(SemigroupError):
    pass


class MeetMissing(SemigroupError):
    pass


class TooLarge(SemigroupError):
    pass


class ValidationError(SemigroupError):
    """乘法表违反逆半群公理，report 中列出全部违例"""

    def __init__(self, report: "ValidationReport"):
        super().__init__("; ".join(report.violations))
        self.report = report


class MissingZero(ValidationError):
    pass


# ------------------ 位掩码子集 ------------------

def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << int(i)
    return mask


def bits(mask: int) -> list[int]:
    """把位掩码展开为升序下标列表"""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_from_bool(flags: np.ndarray) -> int:
    return mask_of(np.flatnonzero(flags))


# ------------------ 数据类型 ------------------

@dataclass(frozen=True, eq=False)
class InverseSemigroup:
    """
    有限逆半群 S。

    属性:
        table (np.ndarray): n×n 乘法表，table[a, b] = a·b
        inv (np.ndarray): 逆元映射 a ↦ a⁻¹
        zero (int | None): 零元下标；验证后为 0，未添加零元时为 None
        labels (tuple[str, ...]): 元素显示名
        relabel (tuple[int, ...]): 新下标 → 输入表中的原下标
    """
    table: np.ndarray
    inv: np.ndarray
    zero: int | None
    labels: tuple[str, ...]
    relabel: tuple[int, ...] = ()

    @property
    def n(self) -> int:
        return int(self.table.shape[0])

    @property
    def elements(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inverse(self, a: int) -> int:
        return int(self.inv[a])

    def label(self, a: int) -> str:
        return self.labels[a]

    def format_subset(self, mask: int) -> str:
        return "{" + ", ".join(self.labels[i] for i in bits(mask)) + "}"

    def index(self, label: str) -> int:
        return self.labels.index(label)

    @cached_property
    def idempotent_mask(self) -> int:
        diag = self.table[np.arange(self.n), np.arange(self.n)]
        return mask_from_bool(diag == np.arange(self.n))

    @cached_property
    def leq(self) -> np.ndarray:
        """自然偏序矩阵 leq[a, b] ⟺ a = aa⁻¹b（只读）"""
        ar = np.arange(self.n)
        aainv = self.table[ar, self.inv]
        out = self.table[aainv[:, None], ar[None, :]] == ar[:, None]
        out.setflags(write=False)
        return out

    @cached_property
    def up_masks(self) -> tuple[int, ...]:
        return tuple(mask_from_bool(row) for row in self.leq)

    @cached_property
    def down_masks(self) -> tuple[int, ...]:
        return tuple(mask_from_bool(col) for col in self.leq.T)


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...]
    semigroup: InverseSemigroup | None = None
    missing_zero: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class OrderRelation:
    leq: np.ndarray
    hasse: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class IdempotentSet:
    members: tuple[int, ...]
    mask: int
    meet_table: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class Subsemigroup:
    """逆子半群及其回到 S 的嵌入 embedding[i] = S 中的下标"""
    semigroup: InverseSemigroup
    embedding: tuple[int, ...]


# ------------------ 验证 ------------------

def _as_table(table) -> np.ndarray:
    try:
        arr = np.asarray(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise MalformedTable(f"乘法表无法转换为整数数组: {exc}") from exc
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise MalformedTable(f"乘法表必须是非空方阵，实际形状 {arr.shape}")
    n = arr.shape[0]
    if n > MAX_ELEMENTS:
        raise MalformedTable(f"元素个数 {n} 超过上限 {MAX_ELEMENTS}")
    bad = np.argwhere((arr < 0) | (arr >= n))
    if len(bad):
        i, j = bad[0]
        raise MalformedTable(f"表项 ({i}, {j}) = {arr[i, j]} 超出范围 [0, {n})")
    return arr


def _find_zero(t: np.ndarray) -> int | None:
    n = t.shape[0]
    for z in range(n):
        if (t[z, :] == z).all() and (t[:, z] == z).all():
            return z
    return None


def validate_inverse_semigroup(table, labels: Sequence[str] | None = None,
                               require_zero: bool = True) -> ValidationReport:
    """
    检查乘法表是否构成带零元的逆半群。

    参数:
        table: n×n 下标数组，第 a 行给出 a·b
        labels: 可选的元素名
        require_zero (bool): 为 False 时允许没有零元（供 adjoin_zero 使用）

    返回:
        ValidationReport: 列出所有违反的公理；成功时附带零元已移到下标 0 的逆半群
    """
    t = _as_table(table)
    n = t.shape[0]
    ar = np.arange(n)
    violations = []

    # (ab)c = a(bc)，逐行比较以控制内存
    for a in range(n):
        left = t[t[a]]
        right = t[a][t]
        bad = np.argwhere(left != right)
        if len(bad):
            b, c = (int(x) for x in bad[0])
            violations.append(f"not associative: ({a}·{b})·{c} = {left[b, c]} ≠ {right[b, c]} = {a}·({b}·{c})")
            break

    # 正则性：存在 x 使 axa = a 且 xax = x
    axa = t[t, ar[:, None]]
    xax = t[t.T, ar[None, :]]
    candidates = (axa == ar[:, None]) & (xax == ar[None, :])
    missing = np.flatnonzero(~candidates.any(axis=1))
    if len(missing):
        violations.append(f"no inverse for element {int(missing[0])}")

    idem = np.flatnonzero(t[ar, ar] == ar)
    sub = t[np.ix_(idem, idem)]
    bad = np.argwhere(sub != sub.T)
    if len(bad):
        e, f = (int(idem[k]) for k in bad[0])
        violations.append(f"idempotents do not commute: {e}·{f} = {t[e, f]} ≠ {t[f, e]} = {f}·{e}")

    zero = _find_zero(t)
    missing_zero = zero is None
    if missing_zero and require_zero:
        violations.append("no zero element")

    if violations:
        return ValidationReport(tuple(violations), None, missing_zero)

    inv = candidates.argmax(axis=1)
    names = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
    if len(names) != n:
        raise MalformedTable(f"标签个数 {len(names)} 与元素个数 {n} 不一致")
    if zero is None:
        S = _freeze(t, inv, None, names, tuple(range(n)))
    else:
        S = _canonicalize(t, inv, zero, names)
    return ValidationReport((), S, missing_zero)


def _freeze(t, inv, zero, labels, relabel) -> InverseSemigroup:
    t = np.array(t, dtype=np.int64)
    inv = np.array(inv, dtype=np.int64)
    t.setflags(write=False)
    inv.setflags(write=False)
    return InverseSemigroup(t, inv, zero, tuple(labels), tuple(relabel))


def _canonicalize(t, inv, zero, labels) -> InverseSemigroup:
    n = t.shape[0]
    perm = np.array([zero] + [i for i in range(n) if i != zero])
    pos = np.empty(n, dtype=np.int64)
    pos[perm] = np.arange(n)
    new_t = pos[t[np.ix_(perm, perm)]]
    new_inv = pos[inv[perm]]
    return _freeze(new_t, new_inv, 0, [labels[i] for i in perm], perm.tolist())


def require_valid(table, labels=None, require_zero=True) -> InverseSemigroup:
    report = validate_inverse_semigroup(table, labels, require_zero)
    if not report.ok:
        if report.missing_zero and len(report.violations) == 1:
            raise MissingZero(report)
        raise ValidationError(report)
    return report.semigroup


# ------------------ 标准样例 ------------------

def brandt(k: int) -> InverseSemigroup:
    """k×k 矩阵单位半群加零元，e_ij·e_kl = δ_jk e_il"""
    if k < 1:
        raise ValueError("k 必须 ≥ 1")
    units = [(i, j) for i in range(1, k + 1) for j in range(1, k + 1)]
    index = {u: pos + 1 for pos, u in enumerate(units)}
    n = k * k + 1
    t = np.zeros((n, n), dtype=np.int64)
    for (i, j), a in index.items():
        for (p, q), b in index.items():
            if j == p:
                t[a, b] = index[(i, q)]
    sep = "" if k < 10 else ","
    labels = ["0"] + [f"e{i}{sep}{j}" for i, j in units]
    return require_valid(t, labels)


def _partial_injections(k: int) -> list[dict[int, int]]:
    """按定义域（先大小后字典序）再按像元组字典序枚举全部部分单射"""
    maps = []
    for size in range(k + 1):
        for dom in itertools.combinations(range(k), size):
            for img in itertools.permutations(range(k), size):
                maps.append(dict(zip(dom, img)))
    return maps


def _injection_label(m: dict[int, int], k: int) -> str:
    if not m:
        return "0"
    return "".join(str(m[x] + 1) if x in m else "-" for x in range(k))


def symmetric_inverse(k: int) -> InverseSemigroup:
    """
    k 个点上的对称逆幺半群 I_k。

    乘积按函数复合 (ab)(x) = a(b(x))，空映射为零元。
    元素标签用单行记号：第 x 位写出 x 的像，未定义处写 '-'，
    例如 k=2 时 "1-" 是 id₁，"21" 是对换。
    """
    if k < 1:
        raise ValueError("k 必须 ≥ 1")
    maps = _partial_injections(k)
    index = {tuple(sorted(m.items())): i for i, m in enumerate(maps)}
    n = len(maps)
    t = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(maps):
        for j, b in enumerate(maps):
            prod = {x: a[y] for x, y in b.items() if y in a}
            t[i, j] = index[tuple(sorted(prod.items()))]
    labels = [_injection_label(m, k) for m in maps]
    return require_valid(t, labels)


def chain(k: int) -> InverseSemigroup:
    """(k+1) 元链 0 < x1 < ... < xk，乘法取交（下标较小者）"""
    if k < 1:
        raise ValueError("k 必须 ≥ 1")
    ar = np.arange(k + 1)
    t = np.minimum(ar[:, None], ar[None, :])
    return require_valid(t, ["0"] + [f"x{i}" for i in range(1, k + 1)])


def meet_semilattice(leq, labels: Sequence[str] | None = None) -> InverseSemigroup:
    """
    由偏序矩阵构造交半格，最小元成为零元。

    参数:
        leq: n×n 布尔矩阵，leq[a, b] 表示 a ≤ b

    返回:
        InverseSemigroup: 乘法为两元素的最大下界
    """
    le = np.asarray(leq, dtype=bool)
    if le.ndim != 2 or le.shape[0] != le.shape[1]:
        raise MeetMissing(f"偏序矩阵必须是方阵，实际形状 {le.shape}")
    n = le.shape[0]
    if not le.diagonal().all():
        raise MeetMissing("关系不自反")
    if (le & le.T & ~np.eye(n, dtype=bool)).any():
        raise MeetMissing("关系不反对称")
    if ((le.astype(np.int64) @ le.astype(np.int64) > 0) & ~le).any():
        raise MeetMissing("关系不传递")
    if not le.all(axis=1).any():
        raise MeetMissing("没有最小元")
    t = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            lower = np.flatnonzero(le[:, a] & le[:, b])
            # 最大下界：所有下界都在它之下
            glb = [c for c in lower if le[lower, c].all()]
            if not glb:
                raise MeetMissing(f"元素 {a} 与 {b} 没有最大下界")
            t[a, b] = glb[0]
    return require_valid(t, labels)


def build_standard(family: str, param=None, labels=None) -> InverseSemigroup:
    """
    按名称构造标准样例。

    参数:
        family (str): "brandt" | "symmetric_inverse" | "chain" | "meet_semilattice"
        param: 前三者为整数 k，交半格为偏序矩阵
    """
    builders = {
        "brandt": brandt,
        "symmetric_inverse": symmetric_inverse,
        "symmetric": symmetric_inverse,
        "chain": chain,
    }
    if family == "meet_semilattice":
        return meet_semilattice(param, labels)
    if family not in builders:
        raise ValueError(f"未知的样例族: {family}")
    return builders[family](int(param))


# ------------------ 幂等元与自然偏序 ------------------

def idempotents(S: InverseSemigroup) -> IdempotentSet:
    members = bits(S.idempotent_mask)
    ar = np.arange(S.n)
    assert mask_of(S.table[S.inv, ar]) == S.idempotent_mask, "E ≠ {s⁻¹s}"
    idx = np.array(members)
    return IdempotentSet(tuple(members), S.idempotent_mask, S.table[np.ix_(idx, idx)])


def natural_leq(S: InverseSemigroup, a: int, b: int) -> bool:
    """a ≤ b ⟺ a = aa⁻¹b"""
    return S.mul(S.mul(a, S.inverse(a)), b) == a


def natural_leq_alt(S: InverseSemigroup, a: int, b: int) -> bool:
    """等价形式 a = ba⁻¹a，用作交叉校验"""
    return S.mul(S.mul(b, S.inverse(a)), a) == a


def order_relation(S: InverseSemigroup) -> OrderRelation:
    leq = S.leq
    lt = leq & ~np.eye(S.n, dtype=bool)
    lt_int = lt.astype(np.int64)
    # 覆盖关系：a < b 且中间没有其他元素
    covers = lt & ~((lt_int @ lt_int) > 0)
    hasse = tuple((int(a), int(b)) for a, b in np.argwhere(covers))
    return OrderRelation(leq, hasse)


def order_properties(S: InverseSemigroup) -> dict[str, bool]:
    """
    对全部元素穷举检验自然偏序与逆元的基本性质。

    返回:
        dict[str, bool]: 性质名 ↦ 是否成立
    """
    t, inv, leq = S.table, S.inv, S.leq
    ar = np.arange(S.n)
    E = np.array(bits(S.idempotent_mask))
    is_idem = t[ar, ar] == ar
    pairs = np.argwhere(leq)
    lo, hi = pairs[:, 0], pairs[:, 1]
    # r[a, b] = b⁻¹b
    r = np.broadcast_to(t[inv, ar], (S.n, S.n))
    ef = t[np.ix_(E, E)]
    below_both = leq[:, E][:, :, None] & leq[:, E][:, None, :]
    return {
        "inverse-involution": bool((inv[inv] == ar).all()),
        "inverse-antimorphism": bool((inv[t] == t[np.ix_(inv, inv)].T).all()),
        "inverse-monotone": bool((~leq | leq[np.ix_(inv, inv)]).all()),
        "product-monotone": bool(leq[t[np.ix_(lo, lo)], t[np.ix_(hi, hi)]].all()),
        "domain-shrinks": bool(leq[t[inv[t], t], r].all()),
        "conjugate-idempotent": bool(is_idem[t[t[inv][:, E], ar[:, None]]].all()),
        "restriction-below": bool(leq[t[:, E], ar[:, None]].all() and leq[t[E, :].T, ar[:, None]].all()),
        "below-idempotent": bool((~leq[:, E] | is_idem[:, None]).all()),
        "idempotent-meet": bool(leq[ef, E[:, None]].all() and leq[ef, E[None, :]].all()
                                and (~below_both | leq[:, ef]).all()),
    }


# ------------------ 新半群 ------------------

def adjoin_zero(S: InverseSemigroup) -> InverseSemigroup:
    if S.zero is not None:
        return S
    n = S.n
    t = np.zeros((n + 1, n + 1), dtype=np.int64)
    t[1:, 1:] = S.table + 1
    labels = ("0",) + S.labels if "0" not in S.labels else ("z",) + S.labels
    logger.debug("adjoined zero to a %d-element semigroup", n)
    return require_valid(t, labels)


def inverse_closure_subsemigroup(S: InverseSemigroup, gens: Iterable[int]) -> Subsemigroup:
    """
    生成元（连同零元）在乘法与求逆下的闭包。

    参数:
        S: 带零元的逆半群
        gens: 非空生成元集合

    返回:
        Subsemigroup: 独立的逆半群以及回到 S 的下标嵌入
    """
    gens = [int(g) for g in gens]
    if not gens:
        raise ValueError("生成元集合不能为空")
    current = set(gens) | {S.zero} | {S.inverse(g) for g in gens}
    while True:
        idx = np.array(sorted(current))
        products = set(np.unique(S.table[np.ix_(idx, idx)]).tolist())
        grown = current | products
        if grown == current:
            break
        current = grown
    members = sorted(current)
    pos = {a: i for i, a in enumerate(members)}
    idx = np.array(members)
    sub = np.vectorize(pos.__getitem__)(S.table[np.ix_(idx, idx)])
    semigroup = require_valid(sub, [S.labels[a] for a in members])
    embedding = tuple(members[i] for i in semigroup.relabel)
    return Subsemigroup(semigroup, embedding)
