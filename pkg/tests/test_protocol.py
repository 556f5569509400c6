import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cardzkp.dpp_graph import DppInstance, extract_graph_paths, fill_from_paths_graph, generate_dpp, greedy_coloring
from cardzkp.errors import InstanceError
from cardzkp.numberlink import FillMode, Filling, Puzzle, fill_from_solution, generate_puzzle, simplify_paths
from cardzkp.oracle import hygiene_violations, local_accept_numberlink
from cardzkp.protocol import (
    Session,
    Variant,
    card_requirements,
    numberlink_layout,
    run_dkdpp,
    run_numberlink,
    run_ukdpp,
    verify_cell_nonterminal_general,
    verify_cell_nonterminal_well_designed,
    verify_cell_terminal,
)
from cardzkp.rng import PermutationSource
from cardzkp.transcript import Transcript

from .conftest import FOUR_PAIRS_VALUES, directed_three_path, four_cycle


def first_failing_cell(puzzle, f, variant):
    """Row-major scan with the per-cell rule written out directly."""
    k = puzzle.k
    for i in range(1, puzzle.m + 1):
        for j in range(1, puzzle.n + 1):
            v = f[(i, j)]
            same = 0
            for c in ((i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)):
                if 1 <= c[0] <= puzzle.m and 1 <= c[1] <= puzzle.n and f[c] == v:
                    same += 1
            if (i, j) in puzzle.terminals:
                ok = same == 1
            elif variant is Variant.GENERAL:
                filler = k + 1 if (i + j) % 2 == 0 else k + 2
                ok = same + (2 if v == filler else 0) == 2
            else:
                ok = same == 2
            if not ok:
                return {"cell": [i, j]}
    return None


def test_four_pairs_terminal_cell(four_pairs, four_pairs_fill):
    assert verify_cell_terminal((2, 2), four_pairs_fill, four_pairs, 4, PermutationSource(0))
    assert verify_cell_terminal((2, 2), four_pairs_fill, four_pairs, 6, PermutationSource(0))


def test_terminal_with_two_matches_fails():
    puzzle = Puzzle(1, 4, {(1, 2): 1, (1, 4): 1}, 1)
    f = Filling([[1, 1, 1, 1]])
    assert not verify_cell_terminal((1, 2), f, puzzle, 3, PermutationSource(0))


def test_terminal_outcome_seed_sweep(four_pairs, four_pairs_fill):
    bad = Filling([[3, 3, 3, 4, 4], [3, 1, 3, 4, 3], [2, 1, 3, 4, 3], [2, 1, 3, 3, 3], [2, 1, 1, 1, 1]])
    bad.values[2, 1] = 3
    assert {verify_cell_terminal((2, 2), four_pairs_fill, four_pairs, 4, PermutationSource(s)) for s in range(50)} == {True}
    assert {verify_cell_terminal((2, 2), bad, four_pairs, 4, PermutationSource(s)) for s in range(50)} == {False}


def test_general_nonterminal_cells(two_pairs, two_pairs_filling):
    for cell in [(3, 3), (1, 1), (4, 4), (2, 4)]:
        tr = Transcript()
        assert verify_cell_nonterminal_general(cell, two_pairs_filling, two_pairs, PermutationSource(3), tr)
        assert hygiene_violations(Transcript(tr.events + [{"type": "decision", "location": None,
                                                             "faces": [], "result": "accept"}])) == []


def test_general_three_matches_fails():
    puzzle = Puzzle(3, 3, {(1, 1): 1, (3, 3): 1}, 1)
    f = Filling([[1, 1, 3], [1, 1, 1], [3, 1, 1]])
    assert not verify_cell_nonterminal_general((2, 2), f, puzzle, PermutationSource(0))


def test_general_filler_cell_with_matching_neighbor_fails(two_pairs, two_pairs_filling):
    f = Filling(two_pairs_filling.values.copy())
    f.values[0, 0] = 4
    # (1,1) now sits between two 4s and passes; its neighbor (1,2) breaks instead
    assert verify_cell_nonterminal_general((1, 1), f, two_pairs, PermutationSource(0))
    assert not verify_cell_nonterminal_general((1, 2), f, two_pairs, PermutationSource(0))
    assert not local_accept_numberlink(two_pairs, f, Variant.GENERAL)
    assert run_numberlink(two_pairs, f, Variant.GENERAL, PermutationSource(0)).failing == {"cell": [1, 2]}


def test_well_designed_cells(four_pairs, four_pairs_fill, columns, columns_partial):
    for cell in four_pairs.cells():
        if not four_pairs.is_terminal(cell):
            assert verify_cell_nonterminal_well_designed(cell, four_pairs_fill, four_pairs, PermutationSource(1))
    for cell in columns.cells():
        if not columns.is_terminal(cell):
            assert verify_cell_nonterminal_well_designed(cell, columns_partial, columns, PermutationSource(1))
    puzzle = Puzzle(2, 3, {(1, 1): 1, (1, 3): 1, (2, 1): 2, (2, 3): 2}, 2)
    f = Filling([[1, 2, 1], [2, 2, 2]])
    with pytest.raises(InstanceError):
        verify_cell_nonterminal_well_designed((1, 1), f, puzzle, PermutationSource(0))
    assert not verify_cell_nonterminal_well_designed((1, 2), f, puzzle, PermutationSource(0))


def test_run_four_pairs(four_pairs, four_pairs_fill):
    decision, transcript = run_numberlink(four_pairs, four_pairs_fill, Variant.WELL_DESIGNED, PermutationSource(0))
    assert decision == "accept"
    assert transcript.decision["result"] == "accept"
    assert [e["type"] for e in transcript.events].count("decision") == 1
    assert hygiene_violations(transcript) == []


def test_run_two_pairs_general(two_pairs, two_pairs_filling):
    res = run_numberlink(two_pairs, two_pairs_filling, "general", PermutationSource(0))
    assert res.accepted and res.restoration_violations == 0
    assert res.phases == 25


def test_run_rejects_at_break(four_pairs):
    f = Filling(FOUR_PAIRS_VALUES)
    f.values[4, 2] = 2
    for variant in (Variant.WELL_DESIGNED, Variant.GENERAL):
        expected = first_failing_cell(four_pairs, f, variant)
        res = run_numberlink(four_pairs, f, variant, PermutationSource(9))
        assert not res.accepted
        assert res.failing == expected
        assert res.transcript.decision["location"] == expected
        assert res.transcript.decision["result"] == "reject"
        assert hygiene_violations(res.transcript) == []


def test_setup_errors(four_pairs, four_pairs_fill):
    with pytest.raises(InstanceError):
        run_numberlink(four_pairs, Filling([[1, 2], [3, 4]]), Variant.GENERAL, PermutationSource(0))
    f = Filling(FOUR_PAIRS_VALUES)
    f.values[0, 0] = 6
    with pytest.raises(InstanceError):
        run_numberlink(four_pairs, f, Variant.WELL_DESIGNED, PermutationSource(0))
    with pytest.raises(InstanceError):
        run_numberlink(four_pairs, four_pairs_fill, Variant.UKDPP, PermutationSource(0))


def test_public_and_secret_placement(four_pairs, four_pairs_fill):
    res = run_numberlink(four_pairs, four_pairs_fill, Variant.GENERAL, PermutationSource(0))
    setup = [e for e in res.transcript.events if e["type"] == "place" and "cell" in e["location"]]
    assert len(setup) == 25
    for e in setup:
        cell = tuple(e["location"]["cell"])
        if cell in four_pairs.terminals:
            assert e["faces"].index("H") + 1 == four_pairs.terminals[cell]
        else:
            assert e["faces"] is None


def test_sealed_log_only_on_request(four_pairs, four_pairs_fill):
    with_log = run_numberlink(four_pairs, four_pairs_fill, Variant.GENERAL, PermutationSource(0))
    without = run_numberlink(four_pairs, four_pairs_fill, Variant.GENERAL, PermutationSource(0), keep_sealed=False)
    assert len(with_log.transcript.sealed) == 50
    assert without.transcript.sealed is None
    assert with_log.transcript.to_jsonl() == without.transcript.to_jsonl()
    assert "\"p\"" not in with_log.transcript.to_jsonl()


def test_malformed_board_sequence_rejects(four_pairs, four_pairs_fill):
    layout = numberlink_layout(four_pairs, Variant.WELL_DESIGNED)
    session = Session(layout, {c: four_pairs_fill[c] for c in layout.slots}, PermutationSource(0))
    uids = session.board[(1, 1)]
    other = session.board[(1, 2)]
    session.board[(1, 1)] = np.array([other[2], *uids[1:]], dtype=np.int32)
    res = session.run()
    assert not res.accepted
    assert res.failing == {"cell": [1, 1]}
    assert res.transcript.events[-1]["type"] == "decision"


def test_ukdpp_four_cycle():
    inst = four_cycle()
    col = greedy_coloring(inst)
    lab = fill_from_paths_graph(inst, {1: (1, 2, 3)}, col)
    res = run_ukdpp(inst, lab, col, PermutationSource(0))
    assert res.accepted and hygiene_violations(res.transcript) == []
    broken = dict(lab)
    broken[2] = lab[4]
    assert not run_ukdpp(inst, broken, col, PermutationSource(0)).accepted


def test_ukdpp_stray_cycle_still_extracts():
    inst = DppInstance(False, 6, ((1, 2), (2, 3), (4, 5), (5, 6), (6, 4)), ((1, 3),))
    lab = {v: 1 for v in range(1, 7)}
    res = run_ukdpp(inst, lab, None, PermutationSource(0))
    assert res.accepted
    assert extract_graph_paths(inst, lab) == {1: (1, 2, 3)}


def test_dkdpp_three_path():
    inst = directed_three_path()
    lab = {1: 1, 2: 1, 3: 1}
    res = run_dkdpp(inst, lab, None, PermutationSource(0))
    assert res.accepted and res.phases == 6
    rounds = [e["location"] for e in res.transcript.events
              if e["type"] == "place" and e["location"].get("row") == 1]
    assert [r["from"] for r in rounds] == [
        {"vertex": 1, "round": "in"}, {"vertex": 1, "round": "out"},
        {"vertex": 2, "round": "in"}, {"vertex": 2, "round": "out"},
        {"vertex": 3, "round": "in"}, {"vertex": 3, "round": "out"},
    ] or [r["from"] for r in rounds] == [{"vertex": v} for v in (1, 1, 2, 2, 3, 3)]


def test_dkdpp_source_with_incoming_match():
    inst = DppInstance(True, 4, ((1, 2), (2, 3), (4, 1)), ((1, 3),))
    res = run_dkdpp(inst, {1: 1, 2: 1, 3: 1, 4: 1}, None, PermutationSource(0))
    assert not res.accepted
    assert res.failing == {"vertex": 1, "round": "in"}


def test_dkdpp_back_chord_rejects_honest_prover():
    # s -> a -> t plus t -> s: the only path carries a backward arc.
    inst = DppInstance(True, 3, ((1, 2), (2, 3), (3, 1)), ((1, 3),))
    res = run_dkdpp(inst, {1: 1, 2: 1, 3: 1}, None, PermutationSource(0))
    assert not res.accepted


def test_ukdpp_rejects_directed_graph():
    with pytest.raises(InstanceError):
        run_ukdpp(directed_three_path(), {1: 1, 2: 1, 3: 1}, None, PermutationSource(0))


@given(st.integers(3, 10), st.integers(1, 3), st.integers(0, 2**32))
def test_dkdpp_nonterminal_rounds(n, k, seed):
    if 2 * k > n:
        return
    inst, paths = generate_dpp(n, k, True, PermutationSource(seed))
    lab = fill_from_paths_graph(inst, paths, greedy_coloring(inst))
    for x, path in paths.items():
        for v in path[1:-1]:
            ins = sum(1 for u in inst.in_neighbors[v] if lab[u] == x)
            outs = sum(1 for u in inst.out_neighbors[v] if lab[u] == x)
            assert (ins, outs) == (1, 1)
    assert run_dkdpp(inst, lab, None, PermutationSource(seed)).accepted


@pytest.mark.parametrize("variant, dims, expected", [
    ("general", dict(m=5, n=5, k=4), (162, 12)),
    ("well-designed", dict(m=5, n=5, k=4), (100, 8)),
    ("ukdpp", dict(vertices=4, k=1, d=2), (24, 8)),
    ("dkdpp", dict(vertices=4, k=1, d=2), (20, 7)),
])
def test_card_requirements(variant, dims, expected):
    assert tuple(card_requirements(variant, **dims)) == expected


@given(st.integers(2, 5), st.integers(2, 5), st.integers(1, 3), st.integers(0, 2**32))
def test_usage_within_requirements(m, n, k, seed):
    if m * n < 2 * k:
        return
    puzzle, ps = generate_puzzle(m, n, k, PermutationSource(seed))
    f = fill_from_solution(puzzle, simplify_paths(ps, puzzle), FillMode.GENERAL)
    res = run_numberlink(puzzle, f, Variant.GENERAL, PermutationSource(seed))
    need = card_requirements(Variant.GENERAL, m=m, n=n, k=k)
    assert res.accepted
    assert res.cards.encoding <= need.encoding and res.cards.marking <= need.marking


def test_same_seed_same_transcript(two_pairs, two_pairs_filling):
    a = run_numberlink(two_pairs, two_pairs_filling, Variant.GENERAL, PermutationSource(42))
    b = run_numberlink(two_pairs, two_pairs_filling, Variant.GENERAL, PermutationSource(42))
    c = run_numberlink(two_pairs, two_pairs_filling, Variant.GENERAL, PermutationSource(43))
    assert a.transcript.to_jsonl() == b.transcript.to_jsonl() != c.transcript.to_jsonl()
    again = Transcript.from_jsonl(a.transcript.to_jsonl(), a.transcript.sealed_jsonl())
    assert again.events == a.transcript.events and again.sealed == a.transcript.sealed
