"""命令行接口

读入逆半群乘法表（文件或内置样例），构造滤子、群胚与拓扑并输出文本、JSON 或 DOT。

用法（在仓库根目录下）:
    python -m src.cli check --build brandt:2
    python -m src.cli topology --build chain:2 --space units --basis principal
    python -m src.cli groupoid examples.txt --kind germs --format json

退出码: 0 成功；1 有结论不成立；2 输入错误。

乘法表文本格式:
    第 1 行为元素个数 n；其后 n 行每行 n 个下标，第 a 行给出 a·b；
    之后可以有若干行 "label i name" 为元素命名。空行与以 # 开头的行被忽略。
"""

from __future__ import annotations

import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import click

from src.algebra import (
    InverseSemigroup,
    MissingZero,
    SemigroupError,
    TooLarge,
    ValidationError,
    adjoin_zero,
    bits,
    build_standard,
    order_properties,
    order_relation,
    require_valid,
)
from src.filter_groupoid import arrow_topology, build_filter_groupoid
from src.filters import BRUTEFORCE_LIMIT, SELECTIONS, classify_subset, efilters, enumerate_filters
from src.germ_groupoid import build_germ_groupoid, germ_equiv
from src.groupoid import FiniteGroupoid, check_axioms
from src.isomorphism import SCHEMA_VERSION, verify_all
from src.topology import POINT_LIMIT, efilter_topology, is_hausdorff

logger = logging.getLogger(__name__)

GROUPOID_KINDS = {
    "filters": ("filter", "proper"),
    "ultra": ("filter", "ultra"),
    "tight": ("filter", "tight"),
    "germs": ("germ", "proper"),
    "ultragerms": ("germ", "ultra"),
}
SPACES = ("units", "efilters", "arrows")
BASES = ("principal", "patch")
FORMATS = ("text", "json", "dot")


class ParseError(SemigroupError):
    """乘法表文本的语法错误，带行号与列号（从 1 开始）"""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"第 {line} 行第 {column} 列: {message}")
        self.line = line
        self.column = column


# ------------------ 文本格式 ------------------

def _tokens(line: str) -> list[tuple[int, str]]:
    """(列号, 记号)"""
    out = []
    col = 0
    for part in line.split():
        col = line.index(part, col)
        out.append((col + 1, part))
        col += len(part)
    return out


def _integer(token: str, line: int, column: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"'{token}' 不是整数", line, column) from None


def parse_table_text(text: str) -> tuple[list[list[int]], list[str] | None]:
    """
    解析乘法表文本。

    返回:
        tuple: (乘法表, 标签列表或 None)
    """
    lines = [(no, raw) for no, raw in enumerate(text.splitlines(), start=1)
             if raw.strip() and not raw.lstrip().startswith("#")]
    if not lines:
        raise ParseError("文件为空", 1)
    no, raw = lines[0]
    head = _tokens(raw)
    if len(head) != 1:
        raise ParseError("第一行应当只有元素个数 n", no, head[1][0] if len(head) > 1 else 1)
    n = _integer(head[0][1], no, head[0][0])
    if n < 1:
        raise ParseError(f"元素个数必须为正，实际 {n}", no, head[0][0])

    table = []
    for row in range(n):
        if row + 1 >= len(lines):
            last = lines[-1][0]
            raise ParseError(f"缺少乘法表第 {row + 1} 行（共需 {n} 行）", last + 1)
        no, raw = lines[row + 1]
        toks = _tokens(raw)
        if len(toks) != n:
            column = toks[n][0] if len(toks) > n else len(raw) + 1
            raise ParseError(f"乘法表每行需要 {n} 个下标，这一行有 {len(toks)} 个", no, column)
        values = []
        for col, tok in toks:
            v = _integer(tok, no, col)
            if not 0 <= v < n:
                raise ParseError(f"下标 {v} 超出范围 [0, {n})", no, col)
            values.append(v)
        table.append(values)

    labels = [str(i) for i in range(n)]
    named = False
    for no, raw in lines[n + 1:]:
        toks = _tokens(raw)
        if len(toks) != 3 or toks[0][1] != "label":
            raise ParseError("表后只允许 'label i name' 行", no, toks[0][0])
        i = _integer(toks[1][1], no, toks[1][0])
        if not 0 <= i < n:
            raise ParseError(f"标签下标 {i} 超出范围 [0, {n})", no, toks[1][0])
        labels[i] = toks[2][1]
        named = True
    if named and len(set(labels)) != n:
        raise ParseError("元素标签有重复", lines[-1][0])
    return table, labels if named else None


def parse_semigroup_text(text: str, adjoin: bool = False) -> InverseSemigroup:
    """解析并验证；adjoin 为真时对没有零元的表添加零元"""
    table, labels = parse_table_text(text)
    if not adjoin:
        return require_valid(table, labels)
    return adjoin_zero(require_valid(table, labels, require_zero=False))


def parse_semigroup_file(path: str | Path, adjoin: bool = False) -> InverseSemigroup:
    return parse_semigroup_text(Path(path).read_text(encoding="utf-8"), adjoin)


def format_semigroup(S: InverseSemigroup) -> str:
    """parse_semigroup_text 的逆：输出规范化后的乘法表与标签"""
    width = len(str(S.n - 1))
    rows = [str(S.n)]
    rows.extend(" ".join(f"{int(v):>{width}}" for v in row) for row in S.table)
    if tuple(S.labels) != tuple(str(i) for i in S.elements):
        rows.extend(f"label {i} {S.label(i)}" for i in S.elements)
    return "\n".join(rows) + "\n"


# ------------------ DOT 与结构化输出 ------------------

def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def unit_label(G: FiniteGroupoid, u: int) -> str:
    """单位用载体集合标注：滤子为自身，芽 [e, ξ] 为 ξ"""
    payload = G.payload[u]
    return str(getattr(payload, "xi", payload))


def emit_dot(G: FiniteGroupoid, path: str | Path | None = None, name: str = "groupoid") -> str:
    """
    把群胚写成 DOT 有向图。

    结点为单位（按箭头编号排序），非单位箭头 γ 为从 d(γ) 指向 r(γ) 的边。
    """
    units = sorted(G.units)
    node = {u: f"u{i}" for i, u in enumerate(units)}
    lines = [f"digraph {name} {{", '  rankdir = "LR" ;', "  node [shape=box, fontname=\"Helvetica\"] ;"]
    lines.extend(f"  {node[u]} [label={_quote(unit_label(G, u))}] ;" for u in units)
    for g in G.arrows:
        if g in node:
            continue
        lines.append(f"  {node[G.d(g)]} -> {node[G.r(g)]} [label={_quote(G.labels[g])}] ;")
    lines.append("}")
    text = "\n".join(lines) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def groupoid_dict(G: FiniteGroupoid) -> dict:
    return {
        "units": [G.labels[u] for u in sorted(G.units)],
        "arrows": [{"id": g, "d": G.d(g), "r": G.r(g), "label": G.labels[g]} for g in G.arrows],
    }


def emit_json(data: dict, path: str | Path | None = None) -> str:
    text = json.dumps(data, ensure_ascii=False, indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


# ------------------ 运行配置 ------------------

@dataclass(frozen=True)
class RunConfig:
    """一次命令行调用的全部参数"""
    command: str
    path: str | None = None
    build: str | None = None
    adjoin_zero: bool = False
    kind: str = "filters"
    select: str = "all"
    mode: str = "principal"
    space: str = "units"
    basis: str = "patch"
    output_format: str = "text"
    output: str | None = None
    bruteforce_limit: int = BRUTEFORCE_LIMIT
    point_limit: int = POINT_LIMIT
    verbosity: int = 0

    def validate(self) -> None:
        if (self.path is None) == (self.build is None):
            raise ValueError("需要且只需要一个输入：文件路径或 --build")
        if self.bruteforce_limit < 1 or self.point_limit < 1:
            raise ValueError("规模上限必须为正")
        if self.command not in COMMANDS:
            raise ValueError(f"未知的命令: {self.command}")

    @property
    def instance(self) -> str:
        return self.build if self.build is not None else Path(self.path).name


def build_from_spec(spec: str) -> InverseSemigroup:
    """'brandt:2'、'symmetric:2'、'chain:2' 形式的内置样例"""
    family, _, param = spec.partition(":")
    if not param:
        raise ValueError(f"样例需要写成 family:k，实际 '{spec}'")
    try:
        k = int(param)
    except ValueError:
        raise ValueError(f"样例参数 '{param}' 不是整数") from None
    return build_standard(family, k)


def load_semigroup(config: RunConfig) -> InverseSemigroup:
    if config.build is not None:
        S = build_from_spec(config.build)
        return adjoin_zero(S) if config.adjoin_zero else S
    return parse_semigroup_file(config.path, config.adjoin_zero)


@dataclass
class Outcome:
    text: str
    data: dict = field(default_factory=dict)
    dot: str | None = None
    code: int = 0


def _header(config: RunConfig) -> dict:
    return {"schema_version": SCHEMA_VERSION, "instance": config.instance}


def _groupoid(S: InverseSemigroup, kind: str) -> FiniteGroupoid:
    family, which = GROUPOID_KINDS[kind]
    if family == "filter":
        return build_filter_groupoid(S, which)
    return build_germ_groupoid(S, which, germ_equiv)


# ------------------ 子命令 ------------------

def cmd_validate(S: InverseSemigroup, config: RunConfig) -> Outcome:
    e = len(bits(S.idempotent_mask))
    text = f"有效的带零逆半群：{S.n} 个元素，{e} 个幂等元，零元 {S.label(S.zero)}"
    return Outcome(text, {**_header(config), "valid": True, "elements": S.n, "idempotents": e})


def cmd_info(S: InverseSemigroup, config: RunConfig) -> Outcome:
    order = order_relation(S)
    E = bits(S.idempotent_mask)
    lines = [
        f"元素 ({S.n}): " + " ".join(S.labels),
        f"零元: {S.label(S.zero)}",
        f"幂等元 ({len(E)}): " + " ".join(S.label(e) for e in E),
        "逆元: " + " ".join(f"{S.label(a)}⁻¹={S.label(S.inverse(a))}" for a in S.elements),
        f"Hasse 覆盖关系 ({len(order.hasse)}):",
    ]
    lines.extend(f"  {S.label(a)} < {S.label(b)}" for a, b in order.hasse)
    properties = order_properties(S)
    lines.append("自然偏序性质: " + " ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in properties.items()))
    data = {
        **_header(config),
        "elements": list(S.labels),
        "zero": S.label(S.zero),
        "idempotents": [S.label(e) for e in E],
        "inverses": {S.label(a): S.label(S.inverse(a)) for a in S.elements},
        "hasse": [[S.label(a), S.label(b)] for a, b in order.hasse],
        "order_properties": properties,
    }
    return Outcome("\n".join(lines), data)


def cmd_filters(S: InverseSemigroup, config: RunConfig) -> Outcome:
    found = enumerate_filters(S, config.mode, config.select, config.bruteforce_limit)
    rows = []
    lines = [f"{config.select} 滤子 ({config.mode}): {len(found)}"]
    for F in found:
        c = classify_subset(S, F.carrier)
        flags = [name for name, on in (("proper", c.is_proper), ("ultra", c.is_ultra),
                                       ("idempotent", c.is_idempotent)) if on]
        lines.append(f"  {F}  {' '.join(flags)}".rstrip())
        rows.append({"carrier": [S.label(a) for a in F.members], "proper": c.is_proper,
                     "ultra": c.is_ultra, "idempotent": c.is_idempotent})
    if config.select == "proper":
        xis = efilters(S, "proper")
        lines.append(f"真 E-滤子: {len(xis)}")
        lines.extend(f"  {xi}" for xi in xis)
    return Outcome("\n".join(lines), {**_header(config), "filters": rows})


def cmd_groupoid(S: InverseSemigroup, config: RunConfig) -> Outcome:
    G = _groupoid(S, config.kind)
    axioms = check_axioms(G)
    lines = [f"{config.kind} 群胚: {len(G.invert)} 个箭头, {len(G.units)} 个单位"]
    for g in G.arrows:
        lines.append(f"  {G.labels[g]}: {unit_label(G, G.d(g))} -> {unit_label(G, G.r(g))}")
    lines.append("群胚公理: " + ("PASS" if axioms.ok else f"FAIL {axioms.first}"))
    data = {**_header(config), "kind": config.kind, "groupoid": groupoid_dict(G), "axioms": axioms.ok}
    return Outcome("\n".join(lines), data, emit_dot(G), 0 if axioms.ok else 1)


def cmd_topology(S: InverseSemigroup, config: RunConfig) -> Outcome:
    if config.space == "efilters":
        points = efilters(S, "proper")
        if len(points) > config.point_limit:
            raise TooLarge(f"点数 {len(points)} 超过上限 {config.point_limit}")
        T = efilter_topology(S, points, config.basis)
        name = str
    else:
        G = build_filter_groupoid(S, "proper")
        points = sorted(G.units) if config.space == "units" else list(G.arrows)
        if len(points) > config.point_limit:
            raise TooLarge(f"点数 {len(points)} 超过上限 {config.point_limit}")
        T = arrow_topology(S, G, config.basis, points=points)
        name = G.labels.__getitem__
    verdict = is_hausdorff(T)
    witness = [name(p) for p in verdict.witness] if verdict.witness else []
    lines = [
        f"空间 {config.space}，{config.basis} 基: {len(T.points)} 个点, {len(T.basis)} 个基集",
        "基判据: " + ("PASS" if T.basis_report.ok else f"FAIL {T.basis_report.first}"),
        "Hausdorff" if verdict else f"non-Hausdorff, witness ({', '.join(witness)})",
    ]
    data = {
        **_header(config),
        "topology": {
            "space": config.space,
            "basis": config.basis,
            "points": [name(p) for p in T.points],
            "basis_sets": len(T.basis),
            "basis_valid": T.basis_report.ok,
            "hausdorff": verdict.hausdorff,
            "witness": witness,
        },
    }
    return Outcome("\n".join(lines), data)


def cmd_check(S: InverseSemigroup, config: RunConfig) -> Outcome:
    report = verify_all(S, equiv=germ_equiv, bruteforce_limit=config.bruteforce_limit,
                        point_limit=config.point_limit, instance=config.instance)
    lines = []
    for c in report.claims:
        status = "PASS" if c.passed else "FAIL"
        line = f"{status}  {c.claim}"
        if not c.passed:
            line += "  " + " | ".join(c.witness)
        lines.append(line)
    lines.append("全部结论成立" if report.ok else f"{len(report.failures)} 条结论不成立")
    return Outcome("\n".join(lines), report.to_dict(), code=0 if report.ok else 1)


def cmd_emit_dot(S: InverseSemigroup, config: RunConfig) -> Outcome:
    G = _groupoid(S, config.kind)
    dot = emit_dot(G)
    return Outcome(dot.rstrip("\n"), {**_header(config), "groupoid": groupoid_dict(G)}, dot)


COMMANDS: dict[str, Callable[[InverseSemigroup, RunConfig], Outcome]] = {
    "validate": cmd_validate,
    "info": cmd_info,
    "filters": cmd_filters,
    "groupoid": cmd_groupoid,
    "topology": cmd_topology,
    "check": cmd_check,
    "emit-dot": cmd_emit_dot,
}


def _axiom_failure(config: RunConfig, exc: ValidationError) -> Outcome:
    violations = list(exc.report.violations)
    data = {
        **_header(config),
        "ok": False,
        "claims": [{"claim": "semigroup-axioms", "passed": False, "witness": violations,
                    "domain": {}, "violations": len(violations)}],
    }
    text = "FAIL  semigroup-axioms  " + " | ".join(violations)
    return Outcome(text, data, code=1)


def _write(outcome: Outcome, config: RunConfig) -> None:
    fmt = "dot" if config.command == "emit-dot" else config.output_format
    if fmt == "json":
        text = emit_json(outcome.data)
    elif fmt == "dot":
        if outcome.dot is None:
            raise ValueError(f"命令 {config.command} 不支持 DOT 输出")
        text = outcome.dot
    else:
        text = outcome.text + "\n"
    if config.output is not None:
        Path(config.output).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


def run(config: RunConfig) -> int:
    """
    执行一次命令。

    返回:
        int: 退出码，0 成功，1 有结论（或群胚公理）不成立，2 输入错误
    """
    try:
        config.validate()
        S = load_semigroup(config)
    except MissingZero as exc:
        click.echo(f"错误: {exc}；可以使用 --adjoin-zero 添加零元", err=True)
        return 2
    except ValidationError as exc:
        if config.command == "check":
            outcome = _axiom_failure(config, exc)
            _write(outcome, config)
            return outcome.code
        click.echo(f"错误: {exc}", err=True)
        return 2
    except (SemigroupError, OSError, ValueError) as exc:
        click.echo(f"错误: {exc}", err=True)
        return 2

    try:
        outcome = COMMANDS[config.command](S, config)
        _write(outcome, config)
    except (SemigroupError, OSError, ValueError) as exc:
        click.echo(f"错误: {exc}", err=True)
        return 2
    logger.debug("%s finished with exit code %d", config.command, outcome.code)
    return outcome.code


# ------------------ click 入口 ------------------

def configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger("src").setLevel(level)


def input_options(func: Callable) -> Callable:
    options = [
        click.argument("path", required=False, type=click.Path(dir_okay=False)),
        click.option("--build", help="内置样例，如 brandt:2、symmetric:2、chain:2"),
        click.option("--adjoin-zero", is_flag=True, help="对没有零元的乘法表添加零元"),
        click.option("--format", "output_format", type=click.Choice(FORMATS), default="text", show_default=True),
        click.option("--output", "-o", type=click.Path(dir_okay=False), help="输出文件，默认标准输出"),
        click.option("--bruteforce-limit", type=int, default=BRUTEFORCE_LIMIT, show_default=True),
        click.option("--point-limit", type=int, default=POINT_LIMIT, show_default=True),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _invoke(ctx: click.Context, command: str, **options: Any) -> None:
    config = RunConfig(command, verbosity=ctx.obj.get("verbosity", 0), **options)
    ctx.exit(run(config))


@click.group()
@click.option("-v", "--verbose", count=True, help="-v 输出各条结论，-vv 输出调试信息（标准错误）")
@click.pass_context
def main(ctx: click.Context, verbose: int) -> None:
    """逆半群的滤子群胚与芽群胚"""
    configure_logging(verbose)
    ctx.ensure_object(dict)
    ctx.obj["verbosity"] = verbose


@main.command()
@input_options
@click.pass_context
def validate(ctx, **options):
    """验证乘法表"""
    _invoke(ctx, "validate", **options)


@main.command()
@input_options
@click.pass_context
def info(ctx, **options):
    """幂等元、零元、逆元与自然偏序的覆盖关系"""
    _invoke(ctx, "info", **options)


@main.command()
@input_options
@click.option("--select", type=click.Choice(SELECTIONS), default="all", show_default=True)
@click.option("--mode", type=click.Choice(("principal", "bruteforce")), default="principal", show_default=True)
@click.pass_context
def filters(ctx, **options):
    """枚举滤子"""
    _invoke(ctx, "filters", **options)


@main.command()
@input_options
@click.option("--kind", type=click.Choice(tuple(GROUPOID_KINDS)), default="filters", show_default=True)
@click.pass_context
def groupoid(ctx, **options):
    """构造滤子群胚或芽群胚"""
    _invoke(ctx, "groupoid", **options)


@main.command()
@input_options
@click.option("--space", type=click.Choice(SPACES), default="units", show_default=True)
@click.option("--basis", type=click.Choice(BASES), default="patch", show_default=True)
@click.pass_context
def topology(ctx, **options):
    """主拓扑或 patch 拓扑及其 Hausdorff 性"""
    _invoke(ctx, "topology", **options)


@main.command()
@input_options
@click.pass_context
def check(ctx, **options):
    """穷举验证全部结论"""
    _invoke(ctx, "check", **options)


@main.command("emit-dot")
@input_options
@click.option("--kind", type=click.Choice(tuple(GROUPOID_KINDS)), default="filters", show_default=True)
@click.pass_context
def emit_dot_command(ctx, **options):
    """输出群胚的 DOT 图"""
    _invoke(ctx, "emit-dot", **options)


if __name__ == "__main__":
    main()
