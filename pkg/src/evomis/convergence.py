"""Best-so-far logs, their aggregation over repetitions, and clocks."""
from __future__ import annotations

import bisect
import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Sequence

__all__ = ["ConvergenceLog", "AggregateReport", "StepClock", "merge_convergence"]


class StepClock:
    """Virtual clock that advances by ``tick`` seconds every time it is read.

    Makes time-limited runs reproducible: the budget is spent in clock reads,
    which happen at deterministic points of the algorithm.
    """

    def __init__(self, tick: float = 1e-3):
        self.tick = tick
        self.now = 0.0

    def __call__(self) -> float:
        self.now += self.tick
        return self.now


@dataclass
class ConvergenceLog:
    """``(t, size)`` records, one per improvement of the best solution.

    With ``deterministic=True`` the stamp is the improvement counter instead
    of elapsed seconds.
    """

    records: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)
    deterministic: bool = False
    initial_size: int | None = None

    def start(self, size: int) -> None:
        """Record the starting best at ``t = 0``."""
        self.initial_size = size
        self.records.append((0.0, int(size)))

    def improve(self, size: int, elapsed: float) -> bool:
        if self.records and size <= self.records[-1][1]:
            return False
        if self.deterministic:
            t = float(len(self.records))
        else:
            t = float(elapsed)
            if self.records and t <= self.records[-1][0]:
                t = math.nextafter(self.records[-1][0], math.inf)
        self.records.append((t, int(size)))
        return True

    @property
    def final_size(self) -> int:
        if self.records:
            return self.records[-1][1]
        return self.initial_size or 0

    def value_at(self, t: float) -> int:
        """Best size at time ``t`` (step function)."""
        i = bisect.bisect_right([r[0] for r in self.records], t)
        if i == 0:
            return self.initial_size if self.initial_size is not None else self.records[0][1]
        return self.records[i - 1][1]

    def to_jsonl(self) -> str:
        return "".join(json.dumps({"t": t, "size": s}) + "\n" for t, s in self.records)

    @classmethod
    def from_jsonl(cls, text: str, **kwargs) -> "ConvergenceLog":
        records = []
        for line in text.splitlines():
            if line.strip():
                rec = json.loads(line)
                records.append((float(rec["t"]), int(rec["size"])))
        return cls(records=records, **kwargs)


def merge_convergence(logs: Sequence[ConvergenceLog]) -> list[tuple[float, float]]:
    """Average best-so-far curve over repetitions.

    All time stamps are pooled and sorted; at each one the mean over runs of
    each run's best size at that time is reported.
    """
    if not logs:
        raise ValueError("need at least one log")
    times = sorted({t for log in logs for t, _ in log.records})
    return [(t, math.fsum(log.value_at(t) for log in logs) / len(logs)) for t in times]


@dataclass
class AggregateReport:
    instance: str
    n: int
    algo: str
    finals: list
    curve: list = field(default_factory=list)

    @property
    def avg(self) -> float:
        return math.fsum(self.finals) / len(self.finals)

    @property
    def max(self) -> int:
        return max(self.finals)

    @property
    def min(self) -> int:
        return min(self.finals)

    @property
    def reps(self) -> int:
        return len(self.finals)

    @classmethod
    def from_logs(cls, instance: str, n: int, algo: str, logs: Sequence[ConvergenceLog]) -> "AggregateReport":
        return cls(instance, n, algo, [log.final_size for log in logs], merge_convergence(logs))

    HEADER = ("instance", "n", "algo", "avg", "max", "min", "reps")

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.HEADER)
        w.writerow([self.instance, self.n, self.algo, repr(self.avg), self.max, self.min, self.reps])
        return buf.getvalue()

    def curve_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("t", "avg_size"))
        for t, v in self.curve:
            w.writerow((repr(t), repr(v)))
        return buf.getvalue()
