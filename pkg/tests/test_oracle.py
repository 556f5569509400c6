import itertools
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cardzkp.dpp_graph import DppInstance, fill_from_paths_graph, greedy_coloring
from cardzkp.errors import RangeError, SizeGuardError
from cardzkp.numberlink import Filling, Puzzle, canonical_paths, extract_solution, validate_paths
from cardzkp.oracle import (
    DistributionSample,
    brute_force_dpp,
    brute_force_numberlink,
    compare_distributions,
    compare_observations,
    exact_rearrange_distribution,
    exact_reveal_distribution,
    hygiene_violations,
    local_accept_dkdpp,
    local_accept_numberlink,
    local_accept_ukdpp,
    observations,
    public_layout,
    real_phase_observations,
    simulate_transcript,
    simulated_phase_observations,
    uniform_permutation_pairs,
    uniform_reveal_distribution,
)
from cardzkp.protocol import Session, Variant, numberlink_layout, run_numberlink
from cardzkp.rng import BiasedPermutations, PermutationSource
from cardzkp.transcript import Transcript

from .conftest import directed_three_path, four_cycle


def test_numberlink_predicate_examples(four_pairs, four_pairs_fill, two_pairs, two_pairs_filling):
    assert local_accept_numberlink(four_pairs, four_pairs_fill, Variant.WELL_DESIGNED)
    assert local_accept_numberlink(four_pairs, four_pairs_fill, Variant.GENERAL)
    assert local_accept_numberlink(two_pairs, two_pairs_filling, Variant.GENERAL)
    f = Filling(two_pairs_filling.values.copy())
    f.values[0, 0] = 4
    assert not local_accept_numberlink(two_pairs, f, Variant.GENERAL)
    with pytest.raises(RangeError):
        local_accept_numberlink(two_pairs, two_pairs_filling, Variant.WELL_DESIGNED)


def test_graph_predicate_examples():
    inst = four_cycle()
    col = greedy_coloring(inst)
    lab = fill_from_paths_graph(inst, {1: (1, 2, 3)}, col)
    assert local_accept_ukdpp(inst, lab, col)
    path5 = DppInstance(False, 5, ((1, 2), (2, 3), (3, 4), (4, 5)), ((1, 3),))
    col5 = greedy_coloring(path5)
    lab5 = fill_from_paths_graph(path5, {1: (1, 2, 3)}, col5)
    assert local_accept_ukdpp(path5, lab5, col5)
    bad = dict(lab5)
    bad[4] = lab5[5]
    assert not local_accept_ukdpp(path5, bad, col5)
    edgeless = DppInstance(False, 3, (), ())
    assert local_accept_ukdpp(edgeless, {1: 1, 2: 1, 3: 1}, greedy_coloring(edgeless))


def test_directed_predicate_examples():
    inst = directed_three_path()
    col = greedy_coloring(inst)
    assert local_accept_dkdpp(inst, {1: 1, 2: 1, 3: 1}, col)
    inst2 = DppInstance(True, 4, ((1, 2), (2, 3), (4, 1)), ((1, 3),))
    assert not local_accept_dkdpp(inst2, {1: 1, 2: 1, 3: 1, 4: 1}, greedy_coloring(inst2))
    inst3 = DppInstance(True, 5, ((1, 2), (2, 3), (4, 5), (5, 4)), ((1, 3),))
    col3 = greedy_coloring(inst3)
    lab = {1: 1, 2: 1, 3: 1, 4: 1 + col3[4], 5: 1 + col3[4]}
    assert not local_accept_dkdpp(inst3, lab, col3)


def test_brute_force_four_pairs(four_pairs, four_pairs_solution):
    with pytest.raises(SizeGuardError):
        brute_force_numberlink(four_pairs, True)
    sols = brute_force_numberlink(four_pairs, True, override=True)
    assert [canonical_paths(s) for s in sols] == [canonical_paths(four_pairs_solution)]


def test_brute_force_small_grids():
    assert brute_force_numberlink(Puzzle(1, 2, {(1, 1): 1, (1, 2): 1}, 1)) == [{1: ((1, 1), (1, 2))}]
    crossing = Puzzle(1, 4, {(1, 1): 1, (1, 3): 1, (1, 2): 2, (1, 4): 2}, 2)
    assert brute_force_numberlink(crossing) == []
    corner = Puzzle(2, 2, {(1, 1): 1, (2, 2): 1}, 1)
    assert len(brute_force_numberlink(corner)) == 2
    assert brute_force_numberlink(corner, True) == []


def test_brute_force_graphs():
    assert brute_force_dpp(four_cycle(2)) == []
    assert sorted(brute_force_dpp(four_cycle(1)), key=str) == [{1: (1, 2, 3)}, {1: (1, 4, 3)}]
    edge = DppInstance(False, 2, ((1, 2),), ((1, 2),))
    assert brute_force_dpp(edge) == [{1: (1, 2)}]
    assert brute_force_dpp(directed_three_path()) == [{1: (1, 2, 3)}]
    with pytest.raises(SizeGuardError):
        brute_force_dpp(DppInstance(False, 11, (), ()))


def test_brute_force_simple_flag():
    puzzle = Puzzle(2, 3, {(1, 1): 1, (1, 3): 1}, 1)
    simple = brute_force_numberlink(puzzle)
    every = brute_force_numberlink(puzzle, simple=False)
    assert len(simple) == 2 and len(every) == 4


def all_fillings(puzzle, width):
    free = [c for c in puzzle.cells() if c not in puzzle.terminals]
    for values in itertools.product(range(1, width + 1), repeat=len(free)):
        grid = np.zeros((puzzle.m, puzzle.n), dtype=np.int64)
        for (i, j), x in puzzle.terminals.items():
            grid[i - 1, j - 1] = x
        for (i, j), x in zip(free, values):
            grid[i - 1, j - 1] = x
        yield Filling(grid)


def test_solvability_concordance_2x3():
    cells = [(i, j) for i in (1, 2) for j in (1, 2, 3)]
    for s, t in itertools.combinations(cells, 2):
        puzzle = Puzzle(2, 3, {s: 1, t: 1}, 1)
        solvable = bool(brute_force_numberlink(puzzle))
        accepted = [f for f in all_fillings(puzzle, 3) if local_accept_numberlink(puzzle, f, Variant.GENERAL)]
        assert solvable == bool(accepted)
        for f in accepted:
            validate_paths(puzzle, extract_solution(puzzle, f))


def test_protocol_matches_predicate_4x4():
    rng = np.random.default_rng(5)
    puzzle = Puzzle(4, 4, {(1, 1): 1, (4, 4): 1, (1, 4): 2, (4, 1): 2}, 2)
    base = np.zeros((4, 4), dtype=np.int64)
    for (i, j), x in puzzle.terminals.items():
        base[i - 1, j - 1] = x
    for _ in range(150):
        grid = rng.integers(1, 5, size=(4, 4))
        for (i, j), x in puzzle.terminals.items():
            grid[i - 1, j - 1] = x
        f = Filling(grid)
        expected = local_accept_numberlink(puzzle, f, Variant.GENERAL)
        for seed in range(5):
            assert run_numberlink(puzzle, f, Variant.GENERAL, PermutationSource(seed)).accepted == expected
        if expected:
            validate_paths(puzzle, extract_solution(puzzle, f))


def test_simulator_terminal_heart_rows(four_pairs):
    src = PermutationSource(3)
    layout = numberlink_layout(four_pairs, Variant.WELL_DESIGNED)
    idx = list(layout.slots).index((2, 2))
    assert layout.checks[idx].a == 5
    obs = simulated_phase_observations(layout, idx, 4000, src)
    counts = Counter(o.heart_rows for o in obs)
    assert set(counts) == {(2,), (3,), (4,), (5,)}
    assert compare_distributions(counts, Counter({(r,): 1000 for r in range(2, 6)})).consistent


def test_simulator_width_one():
    puzzle = Puzzle(1, 2, {(1, 1): 1, (1, 2): 1}, 1)
    tr = simulate_transcript(puzzle, Variant.WELL_DESIGNED, PermutationSource(0))
    assert {o.column for o in observations(tr)} == {1}


def schema(transcript):
    return [(e["type"], tuple(sorted(e["location"] or {}))) for e in transcript.events]


def test_simulator_schema_matches_real(two_pairs, two_pairs_filling):
    real = run_numberlink(two_pairs, two_pairs_filling, Variant.GENERAL, PermutationSource(0)).transcript
    sim = simulate_transcript(two_pairs, Variant.GENERAL, PermutationSource(0))
    assert schema(real) == schema(sim)
    assert hygiene_violations(sim) == []
    for ev_r, ev_s in zip(real.events, sim.events):
        if ev_r["type"] == "place":
            assert ev_r == ev_s


def test_compare_distributions_examples():
    same = compare_distributions([1, 2, 3, 3], [1, 2, 3, 3])
    assert same.consistent and same.statistic == 0.0 and same.support_equal
    rng = np.random.default_rng(0)
    uniform = rng.integers(0, 4, 1000).tolist()
    point = [0] * 1000
    assert not compare_distributions(uniform, point).consistent
    weighted = compare_distributions([DistributionSample("a", 3), DistributionSample("b", 1)], ["a"] * 3 + ["b"])
    assert weighted.statistic == 0.0
    with pytest.raises(ValueError):
        DistributionSample("a", 0)
    empty = compare_distributions([], [])
    assert empty.consistent and empty.n_a == 0


def test_compare_distributions_false_alarm_rate():
    rng = np.random.default_rng(1234)
    hits = 0
    for _ in range(300):
        a = np.bincount(rng.integers(0, 6, 20000), minlength=6)
        b = np.bincount(rng.integers(0, 6, 20000), minlength=6)
        hits += compare_distributions(dict(enumerate(a)), dict(enumerate(b)), 0.001).consistent
    assert hits / 300 >= 0.99


@pytest.mark.parametrize("values, b", [([1, 1, 2], 2), ([2, 1, 2, 2], 3), ([1, 2, 3], 3)])
def test_exact_reveal_is_uniform(values, b):
    c = sum(1 for v in values[1:] if v == values[0])
    assert exact_reveal_distribution(values, b) == uniform_reveal_distribution(len(values), b, c)


def test_exact_rearrange_marks_uniform():
    target = uniform_permutation_pairs(3, 3)
    for values in ([1, 1, 2], [3, 2, 2]):
        for hidden in (None, ((1, 0), (2, 0, 1))):
            dist = exact_rearrange_distribution(values, 3, hidden)
            assert dist == target
            assert sum(dist.values()) == Fraction(1)


def test_biased_shuffle_is_detected(two_pairs, two_pairs_filling):
    layout = public_layout(two_pairs, Variant.GENERAL, None)
    idx = list(layout.slots).index((3, 3))
    values = {c: two_pairs_filling[c] for c in layout.slots}
    biased = Session(layout, values, BiasedPermutations(1, 0.3))
    fair = Session(layout, values, PermutationSource(2))
    sim = simulated_phase_observations(layout, idx, 3000, PermutationSource(3))
    assert not compare_observations(real_phase_observations(biased, idx, 3000), sim).consistent
    assert compare_observations(real_phase_observations(fair, idx, 3000), sim).consistent


def test_hygiene_flags_leaks(four_pairs, four_pairs_fill):
    tr = run_numberlink(four_pairs, four_pairs_fill, Variant.GENERAL, PermutationSource(0)).transcript
    public = [{"cell": list(c)} for c in four_pairs.terminals]
    assert hygiene_violations(tr) == []
    assert hygiene_violations(tr, public) == []

    def tampered(index, **change):
        events = [dict(e) for e in tr.events]
        events[index] = dict(events[index], **change)
        return Transcript(events)

    setup = next(i for i, e in enumerate(tr.events)
                 if e["type"] == "place" and e["faces"] is None and "cell" in e["location"])
    assert hygiene_violations(tampered(setup, faces=["C"] * 6), public)
    row = next(i for i, e in enumerate(tr.events) if e["type"] == "place" and e["location"].get("row") == 1
               and tuple(e["location"]["from"]["cell"]) not in four_pairs.terminals)
    assert hygiene_violations(tampered(row, faces=["C"] * 6))
    reveal = next(i for i, e in enumerate(tr.events) if e["type"] == "reveal")
    bad_loc = dict(tr.events[reveal]["location"], positions=[[2, 1]])
    assert hygiene_violations(tampered(reveal, location=bad_loc, faces=["C"]))
    extra = Transcript(tr.events[:-1] + [{"type": "reveal",
                                          "location": {"check": 0, "stage": "column", "positions": [[2, 1]]},
                                          "faces": ["C"]}] + tr.events[-1:])
    assert hygiene_violations(extra)
    uid = Transcript(tr.events[:1] + [{"type": "place", "location": {"uid": 3}, "faces": None}] + tr.events[1:])
    assert hygiene_violations(uid)
    assert hygiene_violations(Transcript(tr.events[:-1]))


@given(st.integers(0, 2**32))
def test_observations_have_required_size(seed):
    puzzle = Puzzle(2, 3, {(1, 1): 1, (2, 3): 1}, 1)
    tr = simulate_transcript(puzzle, Variant.GENERAL, PermutationSource(seed))
    layout = numberlink_layout(puzzle, Variant.GENERAL)
    for o, plan in zip(observations(tr), layout.checks):
        assert len(o.heart_rows) == plan.expected
        assert sorted(o.revealed_p) == list(range(2, plan.a + 1))
        assert sorted(o.revealed_q) == list(range(1, o.b + 1))
