"""Resumptions and the two interpreters for While with interactive I/O.

A resumption describes all possible evolutions of a program: it has either
terminated (``ret``), waits for an input value and branches on it (``in``),
emits an output value (``out``), or takes a silent step (``delay``).
``step()`` returns one of the tagged tuples

    ("ret", state)
    ("in", continuation)        continuation: Val -> Res, total and pure
    ("out", value, rest)
    ("delay", rest)

computed on demand and memoized, so infinite resumptions are observed
incrementally in bounded time per step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional

from .syntax import (
    Assign,
    If,
    Input,
    Output,
    Seq,
    Skip,
    State,
    Stmt,
    Val,
    Var,
    While,
    aexp,
    bexp,
)


class Res:
    """A suspended resumption; ``step()`` forces and memoizes one observation."""

    __slots__ = ("_force", "_obs", "__weakref__")

    def __init__(self, force: Callable[[], tuple]):
        self._force = force
        self._obs = None

    def step(self) -> tuple:
        if self._obs is None:
            self._obs = self._force()
            self._force = None
        return self._obs

    @staticmethod
    def _of(obs: tuple) -> "Res":
        r = Res.__new__(Res)
        r._force = None
        r._obs = obs
        return r

    @staticmethod
    def ret(s: State) -> "Res":
        return Res._of(("ret", s))

    @staticmethod
    def inp(f: Callable[[Val], "Res"]) -> "Res":
        return Res._of(("in", f))

    @staticmethod
    def out(v: Val, rest: "Res") -> "Res":
        return Res._of(("out", v, rest))

    @staticmethod
    def delay(rest: "Res") -> "Res":
        return Res._of(("delay", rest))

    @staticmethod
    def suspend(make: Callable[[], "Res"]) -> "Res":
        return Res(lambda: make().step())


# ---------------------------------------------------------------------------
# stock resumptions


def bot() -> Res:
    """Silent divergence: an infinite stream of delays."""
    return Res.delay(Res.suspend(bot))


def rep(v: Val) -> Res:
    """Output v forever, two delays per cycle."""
    return Res.delay(Res.delay(Res.out(v, Res.suspend(lambda: rep(v)))))


def rep_fast(v: Val) -> Res:
    """Output v forever, one delay per cycle (shorter latency than rep)."""
    return Res.delay(Res.out(v, Res.suspend(lambda: rep_fast(v))))


def echo(s: State) -> Res:
    """Echo inputs back while they are 0; terminate on the first nonzero."""

    def k(v: Val) -> Res:
        if v == 0:
            return Res.delay(Res.out(v, Res.suspend(lambda: echo(s))))
        return Res.delay(Res.ret(s))

    return Res.inp(k)


def echo_div() -> Res:
    """Like echo, but silently diverges instead of terminating."""

    def k(v: Val) -> Res:
        if v == 0:
            return Res.delay(Res.out(v, Res.suspend(echo_div)))
        return Res.delay(Res.suspend(bot))

    return Res.inp(k)


# ---------------------------------------------------------------------------
# big-step interpreter


def eval_res(stmt: Stmt, s: State) -> Res:
    """Big-step resumption semantics of While with I/O.

    Same delay placement as the pure trace semantics: skip is silent,
    assignment and guard tests each delay once; input/output statements
    perform their action and terminate.
    """
    match stmt:
        case Skip():
            return Res.ret(s)
        case Seq(first=a, second=b):
            return seque_res(lambda s1: eval_res(b, s1), eval_res(a, s))
        case Assign(var=x, expr=a):
            return Res.delay(Res.ret(s.upd(x, aexp(a, s))))
        case If(cond=c, then=a, orelse=b):
            return Res.delay(eval_res(a if bexp(c, s) else b, s))
        case While(cond=c, body=a):
            if bexp(c, s):
                return Res.delay(
                    Res.suspend(
                        lambda: loop_res(
                            lambda s1: eval_res(a, s1), lambda s1: bexp(c, s1), s
                        )
                    )
                )
            return Res.delay(Res.ret(s))
        case Input(var=x):
            return Res.inp(lambda v: Res.ret(s.upd(x, v)))
        case Output(expr=a):
            return Res.out(aexp(a, s), Res.ret(s))
    raise TypeError(f"not a statement: {stmt!r}")


def seque_res(k: Callable[[State], Res], r: Res) -> Res:
    """Continue with k from the final state of r, if r ever returns."""

    def force():
        obs = r.step()
        tag = obs[0]
        if tag == "ret":
            return k(obs[1])
        if tag == "in":
            f = obs[1]
            return Res.inp(lambda v: seque_res(k, f(v)))
        if tag == "out":
            return Res.out(obs[1], seque_res(k, obs[2]))
        return Res.delay(seque_res(k, obs[1]))

    return Res.suspend(force)


def loop_res(k: Callable[[State], Res], p: Callable[[State], bool], s: State) -> Res:
    """Repeat the body k while the guard p holds, starting from state s."""
    if not p(s):
        return Res.ret(s)
    obs = k(s).step()
    tag = obs[0]
    if tag == "ret":
        s1 = obs[1]
        return Res.delay(Res.suspend(lambda: loop_res(k, p, s1)))
    if tag == "in":
        f = obs[1]
        return Res.inp(lambda v: loopseq_res(k, p, f(v)))
    if tag == "out":
        rest = obs[2]
        return Res.out(obs[1], Res.suspend(lambda: loopseq_res(k, p, rest)))
    rest = obs[1]
    return Res.delay(Res.suspend(lambda: loopseq_res(k, p, rest)))


def loopseq_res(k: Callable[[State], Res], p: Callable[[State], bool], r: Res) -> Res:
    """Flush the current body resumption r, then hand back to loop_res."""

    def force():
        obs = r.step()
        tag = obs[0]
        if tag == "ret":
            s = obs[1]
            return Res.delay(Res.suspend(lambda: loop_res(k, p, s)))
        if tag == "in":
            f = obs[1]
            return Res.inp(lambda v: loopseq_res(k, p, f(v)))
        if tag == "out":
            return Res.out(obs[1], loopseq_res(k, p, obs[2]))
        return Res.delay(loopseq_res(k, p, obs[1]))

    return Res.suspend(force)


# ---------------------------------------------------------------------------
# small-step interpreter


@dataclass(frozen=True)
class LRet:
    state: State


@dataclass(frozen=True)
class LIn:
    stmt: Stmt
    update: Callable[[Val], State]


@dataclass(frozen=True)
class LOut:
    value: Val
    stmt: Stmt
    state: State


@dataclass(frozen=True)
class LDelay:
    stmt: Stmt
    state: State


# Lconf: the labeled outcome of one small step of I/O While.
Lconf = LRet | LIn | LOut | LDelay


def red_res(stmt: Stmt, s: State) -> Lconf:
    """One labeled small step of While with I/O."""
    match stmt:
        case Skip():
            return LRet(s)
        case Assign(var=x, expr=a):
            return LDelay(Skip(), s.upd(x, aexp(a, s)))
        case Seq(first=a, second=b):
            c = red_res(a, s)
            match c:
                case LRet(state=s1):
                    return red_res(b, s1)
                case LIn(stmt=a1, update=f):
                    return LIn(Seq(a1, b), f)
                case LOut(value=v, stmt=a1, state=s1):
                    return LOut(v, Seq(a1, b), s1)
                case LDelay(stmt=a1, state=s1):
                    return LDelay(Seq(a1, b), s1)
        case If(cond=c, then=a, orelse=b):
            return LDelay(a if bexp(c, s) else b, s)
        case While(cond=c, body=a):
            if bexp(c, s):
                return LDelay(Seq(a, stmt), s)
            return LDelay(Skip(), s)
        case Input(var=x):
            return LIn(Skip(), lambda v: s.upd(x, v))
        case Output(expr=a):
            return LOut(aexp(a, s), Skip(), s)
    raise TypeError(f"not a statement: {stmt!r}")


def norm_res(stmt: Stmt, s: State) -> Res:
    """Small-step resumption semantics: repeatedly apply red_res."""

    def force():
        c = red_res(stmt, s)
        match c:
            case LRet(state=s1):
                return Res.ret(s1)
            case LIn(stmt=stmt1, update=f):
                return Res.inp(lambda v: norm_res(stmt1, f(v)))
            case LOut(value=v, stmt=stmt1, state=s1):
                return Res.out(v, norm_res(stmt1, s1))
            case LDelay(stmt=stmt1, state=s1):
                return Res.delay(norm_res(stmt1, s1))
        raise TypeError(repr(c))

    return Res.suspend(force)


# ---------------------------------------------------------------------------
# driving a resumption with scripted input

# Events are tagged tuples:
#   ("delay",) ("in", v) ("out", v) ("ret", state)
#   ("truncated",) ("input-exhausted",)
# The last three are terminal.
Event = tuple


def drive(r: Res, next_input: Callable[[], Optional[Val]], fuel: int) -> Iterator[Event]:
    """Yield the events of running r; next_input() supplies input values
    (None meaning no more input). Every delay, in, and out consumes one
    fuel; a terminal event always closes the stream."""
    while True:
        if fuel <= 0:
            yield ("truncated",)
            return
        obs = r.step()
        tag = obs[0]
        if tag == "ret":
            yield ("ret", obs[1])
            return
        if tag == "in":
            v = next_input()
            if v is None:
                yield ("input-exhausted",)
                return
            yield ("in", v)
            r = obs[1](v)
        elif tag == "out":
            yield ("out", obs[1])
            r = obs[2]
        else:
            yield ("delay",)
            r = obs[1]
        fuel -= 1


def run_events(r: Res, script: Iterable[Val], fuel: int) -> list[Event]:
    """Run r against a finite input script; returns the full event log."""
    it = iter(script)
    return list(drive(r, lambda: next(it, None), fuel))
