"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

All comparisons are exact rational equalities or inequalities.
"""

import random
from fractions import Fraction
from math import isqrt

import pytest

from cosgame.approx import additive_fptas, fptas, is_superadditive, proportional_payoff
from cosgame.cli import run_command
from cosgame.cos import (
    cos_cs, cos_exact, cos_exact_wvg, cos_uniform, cos_with_cs, cost_of_stability,
    optimal_cs_value,
)
from cosgame.game import CoalitionStructure, WeightedVotingGame, full_mask, to_tabular
from cosgame.gamefile import format_vector, parse_game, serialize_game
from cosgame.generators import (
    fixtures, gen_all_nonempty_win, gen_anonymous_majority, gen_partition_wvg,
    gen_projective_plane, gen_uniform, tight_two_approx,
)
from cosgame.stability import (
    cs_core_membership, is_stable, least_core_value, max_deficit, max_deficit_brute,
    max_deficit_wvg_dp, veto_agents,
)
from randgames import has_subset_sum, random_payoff, random_tabular, random_wvg


@pytest.fixture
def report(capsys):
    def emit(name: str, ok: bool, detail: str = ""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {name}" + (f": {detail}" if detail else ""))
        assert ok, detail
    return emit


def test_criterion_01_uniform_closed_form(report):
    mismatches = []
    count = 0
    for n in range(1, 9):
        for w in (1, 2, 3):
            for q in range(1, n * w + 1):
                count += 1
                exact = cos_exact_wvg(gen_uniform(n, w, q)).cos
                if cos_uniform(n, w, q) != exact:
                    mismatches.append((n, w, q))
    known = cos_uniform(3, 1, 2) == Fraction(1, 2) == cos_exact_wvg(gen_uniform(3, 1, 2)).cos
    report("01 closed form = LP", not mismatches and known,
           f"{count} instances, mismatches {mismatches}, [1,1,1;2] -> 1/2: {known}")


def test_criterion_02_all_nonempty_win(report):
    bad = []
    for n in range(1, 7):
        g = gen_all_nonempty_win(n)
        c = cos_exact(g).cos
        eps = least_core_value(g)
        if not (c == n - 1 and eps == Fraction(n - 1, n) and c == n * eps):
            bad.append((n, c, eps))
    report("02 all-nonempty-win CoS = n-1 = n*eps", not bad, f"failures {bad}")


def test_criterion_03_fano_plane(report):
    g = gen_projective_plane(2)
    res = cos_exact(g)
    order = 2
    total = Fraction(order * order + order + 1, order + 1)
    # CoS <= sqrt(7) - 1  <=>  (CoS + 1)^2 <= 7, and cross-check with an integer root
    exact_sqrt = (res.cos + 1) ** 2 <= 7
    scale = 10 ** 12
    root_floor = isqrt(7 * scale * scale)  # floor(sqrt(7) * scale)
    int_sqrt = (res.cos + 1) * scale <= root_floor
    ok = (g.n == 7 and res.cos == Fraction(4, 3) and res.total == total == Fraction(7, 3)
          and is_superadditive(g) and exact_sqrt and int_sqrt)
    report("03 Fano plane", ok, f"CoS {res.cos}, total {res.total}, sqrt bound {exact_sqrt}/{int_sqrt}")


def test_criterion_04_anonymous_majority(report):
    bad = []
    for k in range(1, 5):
        g = gen_anonymous_majority(k)
        c = cost_of_stability(g).cos
        grand = g.value(full_mask(g.n))
        if not (c == 1 - Fraction(1, k + 1) and c <= 2 * grand and c == cos_exact(g).cos):
            bad.append((k, c))
    report("04 anonymous majority CoS = 1 - 1/(k+1)", not bad, f"failures {bad}")


def test_criterion_05_general_bounds(report):
    rng = random.Random(5)
    games = [random_wvg(rng, 8, 8) for _ in range(200)] + [random_tabular(rng, 6) for _ in range(50)]
    bad = []
    for g in games:
        c = cost_of_stability(g).cos
        grand = g.value(full_mask(g.n))
        best, _ = optimal_cs_value(g)
        vmax = max(g.value(m) for m in range(1 << g.n))
        if not (best - grand <= c <= g.n * vmax):
            bad.append(str(g))
    report("05 v(CS*) - v(I) <= CoS <= n max v", not bad, f"{len(games)} games, failures {bad[:3]}")


def test_criterion_06_dp_oracle(report):
    rng = random.Random(6)
    bad = 0
    for _ in range(500):
        g = random_wvg(rng, 10, 8)
        p = random_payoff(rng, g.n)
        dp, bf = max_deficit_wvg_dp(g, p), max_deficit_brute(g, p)
        if dp.max_deficit != bf.max_deficit:
            bad += 1
    report("06 DP deficit = brute force", bad == 0, f"500 pairs, mismatches {bad}")


def test_criterion_07_constraint_generation(report):
    rng = random.Random(7)
    bad = []
    for _ in range(100):
        g = random_wvg(rng, 10, 8)
        if cos_exact_wvg(g).cos != cos_exact(to_tabular(g)).cos:
            bad.append(str(g))
    report("07 constraint generation = full LP", not bad, f"100 games, failures {bad[:3]}")


def test_criterion_08_partition_reduction(report):
    rng = random.Random(8)
    bad = []
    done = 0
    while done < 50:
        a = [rng.randint(0, 8) for _ in range(rng.randint(1, 10))]
        if sum(a) % 2 or sum(a) < 2:
            continue
        done += 1
        g, delta = gen_partition_wvg(a)
        K = sum(a) // 2
        core_empty = cos_exact_wvg(g).cos > delta
        if core_empty != has_subset_sum(a, K):
            bad.append(a)
        if not has_subset_sum(a, K):
            p = tuple(Fraction(w, K + 1) for w in a)
            if not (is_stable(g, p) and sum(p) == 1 + delta):
                bad.append(("p*", a))
        if delta != Fraction(K - 1, K + 1):
            bad.append(("delta", a))
    report("08 partition reduction", not bad, f"50 lists, failures {bad[:3]}")


def _fptas_corpus():
    rng = random.Random(9)
    return [random_wvg(rng, 8, 6) for _ in range(100)]


def test_criterion_09_fptas(report):
    bad = []
    for g in _fptas_corpus():
        c = cos_exact_wvg(g).cos
        veto = bool(veto_agents(g))
        if not veto and c < Fraction(1, g.n):
            bad.append(("veto-free floor", str(g)))
        for eps in (Fraction(1, 2), Fraction(1, 5), Fraction(1, 10)):
            d = fptas(g, eps)
            if veto and d != 0:
                bad.append(("veto", str(g), eps))
            if c > 0 and not (c <= d <= (1 + eps) * c):
                bad.append(("mult", str(g), eps))
            a = additive_fptas(g, eps)
            if not (c <= a <= c + eps):
                bad.append(("add", str(g), eps))
    report("09 FPTAS sandwiches and CoS >= 1/n", not bad, f"failures {bad[:3]}")


def test_criterion_10_proportional(report):
    bad = []
    corpus = _fptas_corpus() + [g for g in fixtures().values() if isinstance(g, WeightedVotingGame)]
    for g in corpus:
        p = proportional_payoff(g)
        opt_total = 1 + cos_exact_wvg(g).cos
        if not (max_deficit_brute(g, p).max_deficit <= 0 and sum(p) <= 2 * opt_total):
            bad.append(str(g))
    ratios = {}
    for q in (3, 10, 100):
        g = tight_two_approx(q)
        ratio = sum(proportional_payoff(g)) / (1 + cos_exact_wvg(g).cos)
        ratios[q] = ratio
        if ratio < 2 - Fraction(2, q):
            bad.append(("tight", q, ratio))
    report("10 proportional 2-approximation", not bad,
           f"{len(corpus)} games, tight ratios {', '.join(f'q={q}: {r}' for q, r in ratios.items())}")


def test_criterion_11_coalition_structures(report):
    ex54, ex55 = fixtures()["ex54"], fixtures()["ex55"]
    r54 = cos_cs(ex54, CoalitionStructure.from_lists(3, [(0, 1), (2,)]))
    ok54 = r54.cos == Fraction(1, 2) and r54.witness == (Fraction(1, 2),) * 3

    best, cs = optimal_cs_value(ex55)
    r55 = cos_with_cs(ex55)
    full_lp = cos_cs(to_tabular(ex55), cs)
    min_total = cos_exact(to_tabular(ex55)).total
    cs_core_empty = min_total > best  # no stable payoff distributes v(CS*) or less
    p = (Fraction(1, 2),) * 4 + (Fraction(0),)
    cs55 = CoalitionStructure.from_lists(5, [(0, 1), (2, 3), (4,)])
    rejected = cs_core_membership(ex55, cs55, (0, 0, 0), p) is False
    witness = max_deficit(ex55, p).witness
    ok55 = (best == 2 and cs_core_empty and r55.cos == Fraction(1, 2) == full_lp.cos
            and rejected and witness == 0b11000)
    report("11 coalition structures", ok54 and ok55,
           f"ex54 CoS {r54.cos}; ex55 v(CS*) {best}, CoS_CS {r55.cos}, blocking {witness:05b}")


def _witness_lines(text: str) -> dict:
    return dict(line.split(" ", 1) for line in text.splitlines())


def test_criterion_12_cli_roundtrip(report, tmp_path):
    bad = []
    for name, g in fixtures().items():
        if parse_game(serialize_game(g)) != g:
            bad.append(("roundtrip", name))
        path = tmp_path / f"{name}.game"
        path.write_text(serialize_game(g))
        commands = [["cos", str(path)], ["cos-cs", str(path), "--best"], ["report", str(path)]]
        if isinstance(g, WeightedVotingGame):
            commands += [["approx", str(path), "--eps", "1/5"],
                         ["approx", str(path), "--eps", "1/5", "--additive"],
                         ["approx", str(path), "--proportional"]]
        for cmd in commands:
            first, second = run_command(cmd), run_command(cmd)
            if first != second or first[0] != 0:
                bad.append(("determinism", name, cmd[0]))
                continue
            out = _witness_lines(first[1])
            if "witness" not in out:
                continue
            payoff = ",".join(out["witness"].split())
            if cmd[0] == "cos-cs":
                check = ["check", str(path), "--payoff", payoff, "--structure", out["structure"],
                         "--deltas", out["deltas"]]
            else:
                delta = format_vector([Fraction(out["total"]) - g.value(full_mask(g.n))])
                check = ["check", str(path), "--payoff", payoff, "--delta", delta]
            code, text = run_command(check)
            res = _witness_lines(text)
            if code != 0 or res.get("stable") != "true" or res.get("in_core") != "true":
                bad.append(("witness", name, cmd[0]))
    report("12 CLI round-trip, determinism, witnesses re-verify", not bad, f"failures {bad[:3]}")
