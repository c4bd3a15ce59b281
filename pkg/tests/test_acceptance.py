"""端到端验收：固定样例上的计数、同构、拓扑与变异敏感性"""

import pytest
import sys
import os

# Add the parent directory to the Python path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from click.testing import CliRunner

from src.algebra import brandt, chain, symmetric_inverse
from src.cli import main
from src.filter_groupoid import (
    arrow_topology,
    build_filter_groupoid,
    check_lemma31,
    check_lemma32,
)
from src.filters import efilters, enumerate_filters
from src.groupoid import check_axioms, is_isomorphism, pair_groupoid
from src.isomorphism import verify_all
from src.topology import is_hausdorff, tight_efilters

CURATED = {
    "chain:2": lambda: chain(2),
    "brandt:2": lambda: brandt(2),
    "brandt:3": lambda: brandt(3),
    "symmetric:2": lambda: symmetric_inverse(2),
}


@pytest.mark.parametrize("name", sorted(CURATED))
def test_enumeration_oracle(name):
    S = CURATED[name]()
    for select in ("all", "proper", "ultra", "idempotent"):
        principal = {F.carrier for F in enumerate_filters(S, "principal", select)}
        brute = {F.carrier for F in enumerate_filters(S, "bruteforce", select)}
        assert principal == brute


def test_enumeration_counts():
    expected = {"chain:2": (2, 1), "brandt:2": (4, 4), "symmetric:2": (6, 4)}
    for name, (proper, ultra) in expected.items():
        S = CURATED[name]()
        assert len(enumerate_filters(S, "principal", "proper")) == proper
        assert len(enumerate_filters(S, "principal", "ultra")) == ultra
    I3 = symmetric_inverse(3)
    assert len(enumerate_filters(I3, "principal", "proper")) == 33
    assert len(enumerate_filters(I3, "principal", "ultra")) == 9


def test_brandt_groupoid_matches_pair_groupoid():
    S = brandt(2)
    G = build_filter_groupoid(S)
    assert check_axioms(G).ok
    assert (len(G.invert), len(G.units)) == (4, 2)
    P = pair_groupoid(2)
    coordinates = {"e11": (0, 0), "e12": (0, 1), "e21": (1, 0), "e22": (1, 1)}
    phi = [P.index(coordinates[S.label(F.generator)]) for F in G.payload]
    assert is_isomorphism(G, P, phi).ok


@pytest.mark.parametrize("name", sorted(CURATED))
def test_filter_determination_and_principal_basics(name):
    S = CURATED[name]()
    assert check_lemma31(S).ok
    report = check_lemma32(S)
    assert report.ok
    assert report.domain == {"pairs": S.n ** 2, "sets": S.n}


@pytest.mark.parametrize("name", sorted(CURATED))
def test_verify_all_curated(name):
    report = verify_all(CURATED[name](), instance=name)
    assert report.ok, [(c.claim, c.witness) for c in report.failures]
    for claim in ("pi-bijective", "pi-isomorphism", "pi-homeomorphism", "pi-basic-sets",
                  "ultra-image", "ultra-restriction", "ultra-basis"):
        assert report.claim(claim).passed


def test_hausdorff_remark():
    S = chain(2)
    G = build_filter_groupoid(S)
    units = sorted(G.units)
    verdict = is_hausdorff(arrow_topology(S, G, "principal", points=units))
    assert not verdict
    assert set(verdict.witness) == set(units)
    assert is_hausdorff(arrow_topology(S, G, "patch", points=units))

    domain = verify_all(brandt(2)).claim("unit-hausdorff").domain
    assert domain["meeting-pairs"] == 0
    assert domain["non-hausdorff"] == 0


@pytest.mark.parametrize("name", sorted(CURATED))
def test_tight_equals_ultra(name):
    S = CURATED[name]()
    assert list(tight_efilters(S).filters) == efilters(S, "ultra")
    tight = set(build_filter_groupoid(S, "tight").payload)
    assert tight == set(build_filter_groupoid(S, "ultra").payload)


def test_rerouted_product_fails_check(tmp_path):
    """改动乘法表中的一项后 check 退出码为 1 并给出反例"""
    S = brandt(2)
    table = S.table.copy()
    table[S.index("e12"), S.index("e21")] = S.index("e22")
    text = f"{S.n}\n" + "\n".join(" ".join(str(int(v)) for v in row) for row in table) + "\n"
    path = tmp_path / "rerouted.txt"
    path.write_text(text, encoding="utf-8")
    result = CliRunner().invoke(main, ["check", str(path)])
    assert result.exit_code == 1
    assert "FAIL  semigroup-axioms  not associative" in result.output
