"""Per-check observable samplers for real and simulated verification phases."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from ..protocol import Session
from ..rng import PermutationSource
from ..transcript import Transcript, TranscriptWriter
from .observe import CheckObservation, observations
from .simulator import simulate_phase
from .stats import Comparison, compare_distributions


def _observe_one(writer: TranscriptWriter) -> CheckObservation:
    (obs,) = observations(writer.transcript)
    return obs


def real_phase_observations(session: Session, index: int, trials: int,
                            transcripts: list | None = None) -> list[CheckObservation]:
    """Repeat verification phase ``index`` on one board; the board is restored after each.

    With ``transcripts`` given, each trial's transcript (board setup, the
    phase, a decision) is appended to it.
    """
    plan = session.layout.checks[index]
    setup = [e for e in session.writer.transcript.events if "check" not in (e.get("location") or {})
             and e["type"] == "place"]
    out = []
    for _ in range(trials):
        session.writer = TranscriptWriter(keep_sealed=False)
        passed = session.verify(index, plan)
        out.append(_observe_one(session.writer))
        if transcripts is not None:
            session.writer.decision(passed, None if passed else plan.subject)
            transcripts.append(Transcript(setup + session.writer.transcript.events, None))
    return out


def simulated_phase_observations(layout, index: int, trials: int,
                                 randomness: PermutationSource) -> list[CheckObservation]:
    out = []
    for _ in range(trials):
        w = TranscriptWriter(keep_sealed=False)
        simulate_phase(layout, index, randomness, w)
        out.append(_observe_one(w))
    return out


@dataclass(frozen=True)
class ObservableReport:
    reveal: Comparison
    first_p: Comparison
    first_q: Comparison

    @property
    def consistent(self) -> bool:
        return self.reveal.consistent and self.first_p.consistent and self.first_q.consistent

    @property
    def support_equal(self) -> bool:
        return self.reveal.support_equal and self.first_p.support_equal and self.first_q.support_equal


def compare_observations(a: list[CheckObservation], b: list[CheckObservation],
                         significance: float = 0.001) -> ObservableReport:
    """Reveal pairs jointly; rearrangement permutations through their leading marks."""

    def counts(obs, key):
        return Counter(key(o) for o in obs)

    return ObservableReport(
        compare_distributions(counts(a, lambda o: o.reveal), counts(b, lambda o: o.reveal), significance),
        compare_distributions(counts(a, lambda o: o.revealed_p[:1]), counts(b, lambda o: o.revealed_p[:1]),
                              significance),
        compare_distributions(counts(a, lambda o: o.revealed_q[0]), counts(b, lambda o: o.revealed_q[0]),
                              significance),
    )
