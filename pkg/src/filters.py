"""滤子模块

在自然偏序下计算上/下闭包，识别与枚举 S 中以及幂等元半格 E 中的滤子，
并实现幂等真滤子与 E-滤子之间的对应 ε(F) = F ∩ E，ε⁻¹(ξ) = ↑ξ。

滤子的载体 carrier 为 S 下标上的位掩码；E-滤子同样以 S 中的下标存储。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from src.algebra import (
    InverseSemigroup,
    SemigroupError,
    TooLarge,
    bits,
    inverse_closure_subsemigroup,
    mask_of,
)

logger = logging.getLogger(__name__)

# 暴力枚举 2ⁿ 个子集的规模上限
BRUTEFORCE_LIMIT = 20

SELECTIONS = ("all", "proper", "ultra", "idempotent")


class FilterError(SemigroupError):
    pass


class NotIdempotentFilter(FilterError):
    pass


class NotProper(FilterError):
    pass


@dataclass(frozen=True)
class Filter:
    """S 中的滤子：非空、向上封闭、向下定向"""
    carrier: int
    ambient: InverseSemigroup = field(repr=False)

    @property
    def members(self) -> list[int]:
        return bits(self.carrier)

    @property
    def is_proper(self) -> bool:
        return not self.carrier & 1

    @property
    def is_idempotent(self) -> bool:
        return bool(self.carrier & self.ambient.idempotent_mask)

    @property
    def generator(self) -> int | None:
        """载体的 ≤-最小元；有限情形下每个滤子都有"""
        return _minimum(self.ambient, self.carrier)

    def __contains__(self, a: int) -> bool:
        return bool(self.carrier >> a & 1)

    def __str__(self) -> str:
        return self.ambient.format_subset(self.carrier)


@dataclass(frozen=True)
class EFilter:
    """半格 E 中的滤子，载体为 E 中元素在 S 里的下标"""
    carrier: int
    ambient: InverseSemigroup = field(repr=False)

    @property
    def members(self) -> list[int]:
        return bits(self.carrier)

    @property
    def is_proper(self) -> bool:
        return not self.carrier & 1

    def __contains__(self, e: int) -> bool:
        return bool(self.carrier >> e & 1)

    def __str__(self) -> str:
        return self.ambient.format_subset(self.carrier)


@dataclass(frozen=True)
class FilterClassification:
    is_filter: bool
    is_proper: bool
    is_ultra: bool
    is_idempotent: bool


def _minimum(S: InverseSemigroup, carrier: int) -> int | None:
    for a in bits(carrier):
        if S.up_masks[a] & carrier == carrier:
            return a
    return None


def sort_key(carrier: int) -> tuple[int, int]:
    """按最小元素下标排序，再按掩码"""
    low = (carrier & -carrier).bit_length() - 1
    return low, carrier


# ------------------ 闭包 ------------------

def up_closure(S: InverseSemigroup, A: int) -> int:
    """↑A := {b ∈ S : a ≤ b 对某个 a ∈ A}"""
    out = 0
    for a in bits(A):
        out |= S.up_masks[a]
    return out


def down_closure(S: InverseSemigroup, A: int) -> int:
    out = 0
    for a in bits(A):
        out |= S.down_masks[a]
    return out


def is_up_set(S: InverseSemigroup, A: int) -> bool:
    return all(S.up_masks[a] & ~A == 0 for a in bits(A))


def is_down_directed(S: InverseSemigroup, A: int) -> bool:
    idx = bits(A)
    if not idx:
        return True
    sub = S.leq[np.ix_(idx, idx)]
    # pair[a, b] ⟺ 存在 c ∈ A 使 c ≤ a 且 c ≤ b
    pair = (sub[:, :, None] & sub[:, None, :]).any(axis=0)
    return bool(pair.all())


def is_filter(S: InverseSemigroup, A: int) -> bool:
    return A != 0 and is_up_set(S, A) and is_down_directed(S, A)


# ------------------ 识别与枚举 ------------------

def principal_filter(S: InverseSemigroup, a: int) -> Filter:
    """↑a，当且仅当 a ≠ 0 时为真滤子"""
    return Filter(S.up_masks[a], S)


def _is_minimal_nonzero(S: InverseSemigroup, a: int) -> bool:
    below = S.down_masks[a] & ~(1 << a) & ~1
    return a != S.zero and below == 0


def _classify_principal(S: InverseSemigroup, a: int) -> FilterClassification:
    F = principal_filter(S, a)
    return FilterClassification(True, F.is_proper, _is_minimal_nonzero(S, a), F.is_idempotent)


def _select(classes: FilterClassification, select: str) -> bool:
    if select == "all":
        return classes.is_filter
    if select == "proper":
        return classes.is_proper
    if select == "ultra":
        return classes.is_ultra
    if select == "idempotent":
        return classes.is_idempotent
    raise ValueError(f"未知的选择方式: {select}")


def _bruteforce(S: InverseSemigroup, limit: int) -> list[int]:
    if S.n > limit:
        raise TooLarge(f"暴力枚举需要 n ≤ {limit}，实际 n = {S.n}")
    return [A for A in range(1, 1 << S.n) if is_filter(S, A)]


@lru_cache(maxsize=64)
def _enumerate(S: InverseSemigroup, mode: str, limit: int) -> tuple[tuple[int, FilterClassification], ...]:
    if mode == "principal":
        seen = {}
        for a in S.elements:
            seen.setdefault(S.up_masks[a], _classify_principal(S, a))
        found = list(seen.items())
    elif mode == "bruteforce":
        carriers = _bruteforce(S, limit)
        proper = [A for A in carriers if not A & 1]
        found = []
        for A in carriers:
            is_proper = not A & 1
            # 极大性：没有严格更大的真滤子
            ultra = is_proper and not any(B != A and A & B == A for B in proper)
            idem = bool(A & S.idempotent_mask)
            found.append((A, FilterClassification(True, is_proper, ultra, idem)))
    else:
        raise ValueError(f"未知的枚举方式: {mode}")
    found.sort(key=lambda item: sort_key(item[0]))
    logger.debug("%s enumeration: %d filters over %d elements", mode, len(found), S.n)
    return tuple(found)


def enumerate_filters(S: InverseSemigroup, mode: str = "principal", select: str = "all",
                      limit: int = BRUTEFORCE_LIMIT) -> list[Filter]:
    """
    枚举 S 中的滤子。

    参数:
        mode (str): "principal" 取全部 ↑a 去重；"bruteforce" 检验全部 2ⁿ 个子集
        select (str): "all" | "proper" | "ultra" | "idempotent"
        limit (int): 暴力枚举的元素个数上限

    返回:
        list[Filter]: 按最小元素下标排序的滤子
    """
    return [Filter(A, S) for A, classes in _enumerate(S, mode, limit) if _select(classes, select)]


def classify_subset(S: InverseSemigroup, A: int) -> FilterClassification:
    """
    判定子集 A 的滤子性质。

    超滤子的判定按定义：与 enumerate_filters 的全部真滤子比较，看是否存在严格更大者。
    """
    filt = is_filter(S, A)
    proper = filt and not A & 1
    ultra = proper and not any(
        B.carrier != A and A & B.carrier == A
        for B in enumerate_filters(S, "principal", "proper")
    )
    return FilterClassification(filt, proper, ultra, bool(A & S.idempotent_mask))


# ------------------ E-滤子与 ε ------------------

@lru_cache(maxsize=64)
def semilattice(S: InverseSemigroup):
    """把 E 视为独立的带零逆半群，返回 Subsemigroup（含回到 S 的嵌入）"""
    return inverse_closure_subsemigroup(S, bits(S.idempotent_mask))


def efilters(S: InverseSemigroup, select: str = "proper") -> list[EFilter]:
    sub = semilattice(S)
    out = []
    for F in enumerate_filters(sub.semigroup, "principal", select):
        out.append(EFilter(mask_of(sub.embedding[i] for i in F.members), S))
    out.sort(key=lambda xi: sort_key(xi.carrier))
    return out


def is_efilter(S: InverseSemigroup, carrier: int) -> bool:
    """载体是否为 E 中的滤子（在 E 内向上封闭且向下定向）"""
    E = S.idempotent_mask
    if carrier == 0 or carrier & ~E:
        return False
    if any(S.up_masks[e] & E & ~carrier for e in bits(carrier)):
        return False
    return is_down_directed(S, carrier)


def epsilon(F: Filter) -> EFilter:
    if not F.is_idempotent:
        raise NotIdempotentFilter(f"{F} 不含幂等元")
    if not F.is_proper:
        raise NotProper(f"{F} 含零元")
    return EFilter(F.carrier & F.ambient.idempotent_mask, F.ambient)


def epsilon_inv(xi: EFilter) -> Filter:
    if not xi.is_proper:
        raise NotProper(f"{xi} 含零元")
    return Filter(up_closure(xi.ambient, xi.carrier), xi.ambient)


def closed_under_inverse_and_product(F: Filter) -> bool:
    """含幂等元的滤子对求逆与乘法封闭"""
    S = F.ambient
    idx = np.array(F.members)
    inv_ok = mask_of(S.inv[idx]) & ~F.carrier == 0
    prod_ok = mask_of(np.unique(S.table[np.ix_(idx, idx)])) & ~F.carrier == 0
    return bool(inv_ok and prod_ok)
