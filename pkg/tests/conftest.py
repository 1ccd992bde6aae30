import itertools
import time

import pytest

from icanon.ring import LaurentPoly


def subsets(gens):
    gens = tuple(gens)
    for r in range(len(gens) + 1):
        for c in itertools.combinations(gens, r):
            yield frozenset(c)


def poly(text: str) -> LaurentPoly:
    return LaurentPoly.parse(text)


class Verdict:
    """Prints one PASS/FAIL line per acceptance criterion straight to the terminal."""

    def __init__(self, capsys):
        self._capsys = capsys
        self._t0 = time.perf_counter()

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self._t0

    def report(self, number: int, title: str, ok: bool, detail: str = "") -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title} ({self.elapsed:.1f}s){' ' + detail if detail else ''}"
        with self._capsys.disabled():
            print("\n" + line)
        assert ok, line


@pytest.fixture
def verdict(capsys):
    return Verdict(capsys)
