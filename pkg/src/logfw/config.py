"""Budgets for the searches that can blow up, settable per task."""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Budgets:
    groebner_pairs: int = 20_000
    membership_nodes: int = 200_000
    oracle_ring_size: int = 4096
    hilbert_rank: int = 4
    hilbert_generators: int = 12


_current: contextvars.ContextVar[Budgets] = contextvars.ContextVar("budgets", default=Budgets())


def current_budgets() -> Budgets:
    return _current.get()


@contextlib.contextmanager
def budgets(**overrides):
    token = _current.set(replace(_current.get(), **overrides))
    try:
        yield _current.get()
    finally:
        _current.reset(token)
