"""Coinductive traces and the two trace-producing interpreters for pure While.

A trace is a possibly infinite, nonempty sequence of states. It is observed
one step at a time: ``step()`` returns ``(state, tail)`` where ``tail`` is
``None`` when the trace ends here, or the rest of the trace otherwise. Tails
are produced on demand, so infinite traces are fine; each observation does
work bounded by the size of the statement that produced the trace, never by
the (possibly infinite) length of the trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .syntax import (
    Assign,
    If,
    Input,
    Output,
    Seq,
    Skip,
    State,
    Stmt,
    While,
    aexp,
    bexp,
    is_pure,
)


class ImpureProgramError(ValueError):
    """A program with input/output was fed to the pure-While interpreters."""


Observation = tuple  # (State, Optional[Trace])


class Trace:
    """A suspended trace; ``step()`` forces and memoizes one observation."""

    __slots__ = ("_force", "_obs", "__weakref__")

    def __init__(self, force: Callable[[], Observation]):
        self._force = force
        self._obs = None

    def step(self) -> Observation:
        if self._obs is None:
            self._obs = self._force()
            self._force = None
        return self._obs

    @staticmethod
    def nil(s: State) -> "Trace":
        t = Trace.__new__(Trace)
        t._force = None
        t._obs = (s, None)
        return t

    @staticmethod
    def delay(s: State, tail: "Trace") -> "Trace":
        t = Trace.__new__(Trace)
        t._force = None
        t._obs = (s, tail)
        return t

    @staticmethod
    def suspend(make: Callable[[], "Trace"]) -> "Trace":
        """A trace whose first observation is delegated to make()."""
        return Trace(lambda: make().step())


@dataclass(frozen=True)
class TracePrefix:
    """A finite observation of a trace: the states seen, and whether the
    trace actually ended or the fuel ran out first."""

    states: tuple
    ended: bool

    @property
    def status(self) -> str:
        return "ended" if self.ended else "truncated"


def take(t: Trace, fuel: int) -> TracePrefix:
    """Observe at most fuel steps (plus a free final nil observation).

    Fuel counts Delay observations; a trace that ends within the budget
    yields all its states and ``ended``, otherwise the states seen so far
    and ``truncated``.
    """
    states = []
    for _ in range(fuel):
        s, tail = t.step()
        states.append(s)
        if tail is None:
            return TracePrefix(tuple(states), True)
        t = tail
    s, tail = t.step()
    if tail is None:
        states.append(s)
        return TracePrefix(tuple(states), True)
    return TracePrefix(tuple(states), False)


# ---------------------------------------------------------------------------
# big-step interpreter


def eval_trace(stmt: Stmt, s: State) -> Trace:
    """Big-step trace semantics of pure While.

    Skip is silent; assignment and every guard test contribute one delay.
    Total: diverging programs yield infinite traces.
    """
    if not is_pure(stmt):
        raise ImpureProgramError(
            "trace semantics is for pure While; program performs input/output"
        )
    return _eval(stmt, s)


def _eval(stmt: Stmt, s: State) -> Trace:
    match stmt:
        case Skip():
            return Trace.nil(s)
        case Seq(first=a, second=b):
            return seque(lambda s1: _eval(b, s1), _eval(a, s))
        case Assign(var=x, expr=a):
            return Trace.delay(s, Trace.nil(s.upd(x, aexp(a, s))))
        case If(cond=c, then=a, orelse=b):
            return Trace.delay(s, _eval(a if bexp(c, s) else b, s))
        case While(cond=c, body=a):
            if bexp(c, s):
                return Trace.delay(
                    s,
                    Trace.suspend(
                        lambda: loop(lambda s1: _eval(a, s1), lambda s1: bexp(c, s1), s)
                    ),
                )
            return Trace.delay(s, Trace.nil(s))
        case Input() | Output():
            raise ImpureProgramError(f"input/output statement in pure context: {stmt!r}")
    raise TypeError(f"not a statement: {stmt!r}")


def seque(k: Callable[[State], Trace], t: Trace) -> Trace:
    """Continue with k from the last state of t, if t ever ends."""

    def force():
        s, tail = t.step()
        if tail is None:
            return k(s)
        return Trace.delay(s, seque(k, tail))

    return Trace.suspend(force)


def loop(k: Callable[[State], Trace], p: Callable[[State], bool], s: State) -> Trace:
    """Repeat the body k while the guard p holds, starting from state s."""
    if not p(s):
        return Trace.nil(s)
    s1, tail = k(s).step()
    if tail is None:
        return Trace.delay(s1, Trace.suspend(lambda: loop(k, p, s1)))
    return Trace.delay(s1, Trace.suspend(lambda: loopseq(k, p, tail)))


def loopseq(k: Callable[[State], Trace], p: Callable[[State], bool], t: Trace) -> Trace:
    """Flush the current body trace t, then hand back to loop."""

    def force():
        s, tail = t.step()
        if tail is None:
            return Trace.delay(s, Trace.suspend(lambda: loop(k, p, s)))
        return Trace.delay(s, Trace.suspend(lambda: loopseq(k, p, tail)))

    return Trace.suspend(force)


# ---------------------------------------------------------------------------
# small-step interpreter


def red(stmt: Stmt, s: State) -> Optional[tuple[Stmt, State]]:
    """One-step reduction; None means the statement is terminal."""
    match stmt:
        case Skip():
            return None
        case Assign(var=x, expr=a):
            return (Skip(), s.upd(x, aexp(a, s)))
        case Seq(first=a, second=b):
            r = red(a, s)
            if r is None:
                return red(b, s)
            a1, s1 = r
            return (Seq(a1, b), s1)
        case If(cond=c, then=a, orelse=b):
            return (a if bexp(c, s) else b, s)
        case While(cond=c, body=a):
            if bexp(c, s):
                return (Seq(a, stmt), s)
            return (Skip(), s)
        case Input() | Output():
            raise ImpureProgramError(f"input/output statement in pure context: {stmt!r}")
    raise TypeError(f"not a statement: {stmt!r}")


def norm(stmt: Stmt, s: State) -> Trace:
    """Small-step trace semantics: repeatedly apply red, one delay per step."""
    if not is_pure(stmt):
        raise ImpureProgramError(
            "trace semantics is for pure While; program performs input/output"
        )
    return _norm(stmt, s)


def _norm(stmt: Stmt, s: State) -> Trace:
    def force():
        r = red(stmt, s)
        if r is None:
            return Trace.nil(s)
        stmt1, s1 = r
        return Trace.delay(s, _norm(stmt1, s1))

    return Trace.suspend(force)
