"""Abstract syntax, states, and expression evaluation for the While language
(with input/output statements)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

# Variables are interned non-negative indices (the parser owns the
# name <-> index table); values are signed 64-bit integers.
Var = int
Val = int

_MOD = 1 << 64
_HALF = 1 << 63


def wrap(n: int) -> Val:
    """Reduce n to a signed 64-bit value, two's-complement wrap-around."""
    return (n + _HALF) % _MOD - _HALF


# ---------------------------------------------------------------------------
# arithmetic expressions


@dataclass(frozen=True, slots=True)
class NumLit:
    value: Val


@dataclass(frozen=True, slots=True)
class VarRef:
    var: Var


@dataclass(frozen=True, slots=True)
class Add:
    left: "AExp"
    right: "AExp"


@dataclass(frozen=True, slots=True)
class Sub:
    left: "AExp"
    right: "AExp"


@dataclass(frozen=True, slots=True)
class Mul:
    left: "AExp"
    right: "AExp"


AExp = Union[NumLit, VarRef, Add, Sub, Mul]


# ---------------------------------------------------------------------------
# boolean expressions


@dataclass(frozen=True, slots=True)
class TrueLit:
    pass


@dataclass(frozen=True, slots=True)
class FalseLit:
    pass


@dataclass(frozen=True, slots=True)
class Eq:
    left: AExp
    right: AExp


@dataclass(frozen=True, slots=True)
class Le:
    left: AExp
    right: AExp


@dataclass(frozen=True, slots=True)
class Not:
    operand: "BExp"


@dataclass(frozen=True, slots=True)
class And:
    left: "BExp"
    right: "BExp"


@dataclass(frozen=True, slots=True)
class Or:
    left: "BExp"
    right: "BExp"


BExp = Union[TrueLit, FalseLit, Eq, Le, Not, And, Or]

TT = TrueLit()
FF = FalseLit()


# ---------------------------------------------------------------------------
# statements


@dataclass(frozen=True, slots=True)
class Skip:
    pass


@dataclass(frozen=True, slots=True)
class Seq:
    first: "Stmt"
    second: "Stmt"


@dataclass(frozen=True, slots=True)
class Assign:
    var: Var
    expr: AExp


@dataclass(frozen=True, slots=True)
class If:
    cond: BExp
    then: "Stmt"
    orelse: "Stmt"


@dataclass(frozen=True, slots=True)
class While:
    cond: BExp
    body: "Stmt"


@dataclass(frozen=True, slots=True)
class Input:
    var: Var


@dataclass(frozen=True, slots=True)
class Output:
    expr: AExp


Stmt = Union[Skip, Seq, Assign, If, While, Input, Output]

SKIP = Skip()


# ---------------------------------------------------------------------------
# states


class State:
    """Total map from variables to values with default 0.

    Stored canonically: no explicit binding to the default value, so two
    states compare equal iff they denote the same total function.
    Immutable; upd returns a fresh state.
    """

    __slots__ = ("_bindings",)

    default: Val = 0

    def __init__(self, bindings=None):
        b = {}
        if bindings:
            for x, v in dict(bindings).items():
                v = wrap(v)
                if v != State.default:
                    b[x] = v
        self._bindings = b

    @classmethod
    def _raw(cls, bindings: dict) -> "State":
        s = cls.__new__(cls)
        s._bindings = bindings
        return s

    @classmethod
    def empty(cls) -> "State":
        return cls._raw({})

    def lkp(self, x: Var) -> Val:
        return self._bindings.get(x, State.default)

    def upd(self, x: Var, v: Val) -> "State":
        v = wrap(v)
        b = dict(self._bindings)
        if v == State.default:
            b.pop(x, None)
        else:
            b[x] = v
        return State._raw(b)

    def items(self):
        """Bindings as a tuple sorted by variable index (canonical order)."""
        return tuple(sorted(self._bindings.items()))

    def __eq__(self, other):
        if not isinstance(other, State):
            return NotImplemented
        return self._bindings == other._bindings

    def __hash__(self):
        return hash(frozenset(self._bindings.items()))

    def __repr__(self):
        inner = ", ".join(f"{x}={v}" for x, v in self.items())
        return f"State({{{inner}}})"


def lkp(x: Var, s: State) -> Val:
    return s.lkp(x)


def upd(x: Var, v: Val, s: State) -> State:
    return s.upd(x, v)


# ---------------------------------------------------------------------------
# expression evaluation (total; arithmetic wraps at 64 bits)


def aexp(a: AExp, s: State) -> Val:
    match a:
        case NumLit(value=z):
            return wrap(z)
        case VarRef(var=x):
            return s.lkp(x)
        case Add(left=l, right=r):
            return wrap(aexp(l, s) + aexp(r, s))
        case Sub(left=l, right=r):
            return wrap(aexp(l, s) - aexp(r, s))
        case Mul(left=l, right=r):
            return wrap(aexp(l, s) * aexp(r, s))
    raise TypeError(f"not an arithmetic expression: {a!r}")


def bexp(b: BExp, s: State) -> bool:
    match b:
        case TrueLit():
            return True
        case FalseLit():
            return False
        case Eq(left=l, right=r):
            return aexp(l, s) == aexp(r, s)
        case Le(left=l, right=r):
            return aexp(l, s) <= aexp(r, s)
        case Not(operand=x):
            return not bexp(x, s)
        case And(left=l, right=r):
            return bexp(l, s) and bexp(r, s)
        case Or(left=l, right=r):
            return bexp(l, s) or bexp(r, s)
    raise TypeError(f"not a boolean expression: {b!r}")


# ---------------------------------------------------------------------------
# statement utilities


def is_pure(stmt: Stmt) -> bool:
    """True iff stmt contains no input/output statement."""
    match stmt:
        case Seq(first=a, second=b):
            return is_pure(a) and is_pure(b)
        case If(then=a, orelse=b):
            return is_pure(a) and is_pure(b)
        case While(body=a):
            return is_pure(a)
        case Input() | Output():
            return False
    return True


def map_variables(stmt: Stmt, f: Callable[[Var], Var]) -> Stmt:
    """Rebuild stmt with every variable index replaced by f(index)."""

    def ma(a: AExp) -> AExp:
        match a:
            case NumLit():
                return a
            case VarRef(var=x):
                return VarRef(f(x))
            case Add(left=l, right=r):
                return Add(ma(l), ma(r))
            case Sub(left=l, right=r):
                return Sub(ma(l), ma(r))
            case Mul(left=l, right=r):
                return Mul(ma(l), ma(r))
        raise TypeError(repr(a))

    def mb(b: BExp) -> BExp:
        match b:
            case TrueLit() | FalseLit():
                return b
            case Eq(left=l, right=r):
                return Eq(ma(l), ma(r))
            case Le(left=l, right=r):
                return Le(ma(l), ma(r))
            case Not(operand=x):
                return Not(mb(x))
            case And(left=l, right=r):
                return And(mb(l), mb(r))
            case Or(left=l, right=r):
                return Or(mb(l), mb(r))
        raise TypeError(repr(b))

    def ms(st: Stmt) -> Stmt:
        match st:
            case Skip():
                return st
            case Seq(first=a, second=b):
                return Seq(ms(a), ms(b))
            case Assign(var=x, expr=a):
                return Assign(f(x), ma(a))
            case If(cond=c, then=a, orelse=b):
                return If(mb(c), ms(a), ms(b))
            case While(cond=c, body=a):
                return While(mb(c), ms(a))
            case Input(var=x):
                return Input(f(x))
            case Output(expr=a):
                return Output(ma(a))
        raise TypeError(repr(st))

    return ms(stmt)


def variables(stmt: Stmt) -> set[Var]:
    """All variable indices occurring in stmt."""
    seen: set[Var] = set()
    map_variables(stmt, lambda x: (seen.add(x), x)[1])
    return seen
