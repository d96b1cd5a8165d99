"""Command-line driver: run programs under either interpreter, compare the
interpreters, and run the bisimilarity/responsiveness checkers.

Exit statuses: 0 ok/agreement, 1 parse or contract error, 2 truncated,
3 input exhausted, 4 distinguished/latency exceeded, 5 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import checks, parse as parse_mod, resumption, trace
from .parse import NameTable, ParseError, parse, pretty
from .syntax import State, is_pure, wrap

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_TRUNCATED = 2
EXIT_INPUT_EXHAUSTED = 3
EXIT_DISTINGUISHED = 4
EXIT_BUDGET = 5


def _die(msg: str) -> int:
    print(msg, file=sys.stderr)
    return EXIT_ERROR


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            src = fh.read()
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror or exc}")
    try:
        return parse(src)
    except ParseError as exc:
        raise CliError(f"{path}:{exc}")


class CliError(Exception):
    pass


def _parse_vals(text: str) -> list[int]:
    if not text.strip():
        return []
    try:
        return [wrap(int(part)) for part in text.split(",")]
    except ValueError:
        raise CliError(f"bad integer list: {text!r}")


def _parse_init(text: str, names: NameTable) -> State:
    s = State.empty()
    if not text.strip():
        return s
    for item in text.split(","):
        if "=" not in item:
            raise CliError(f"bad --init entry: {item!r} (want name=value)")
        name, _, value = item.partition("=")
        try:
            v = wrap(int(value))
        except ValueError:
            raise CliError(f"bad --init value: {value!r}")
        s = s.upd(names.intern(name.strip()), v)
    return s


def _render_state(state: State, names: NameTable) -> str:
    pairs = []
    for idx, v in state.items():
        try:
            name = names.name_of(idx)
        except LookupError:
            name = f"_{idx}"
        pairs.append((name, v))
    pairs.sort()
    return "{" + ", ".join(f"{n}={v}" for n, v in pairs) + "}"


def _state_dict(state: State, names: NameTable) -> dict:
    out = {}
    for idx, v in state.items():
        try:
            out[names.name_of(idx)] = v
        except LookupError:
            out[f"_{idx}"] = v
    return dict(sorted(out.items()))


def _print_event(ev, names: NameTable, as_json: bool):
    tag = ev[0]
    if as_json:
        obj = {"tag": tag}
        if tag == "in" or tag == "out":
            obj["value"] = ev[1]
        elif tag == "ret":
            obj["state"] = _state_dict(ev[1], names)
        print(json.dumps(obj), flush=True)
        return
    if tag == "in":
        print(f"in {ev[1]}", flush=True)
    elif tag == "out":
        print(f"out {ev[1]}", flush=True)
    elif tag == "ret":
        print(f"ret {_render_state(ev[1], names)}", flush=True)
    else:
        print(tag, flush=True)


_EVENT_EXIT = {
    "ret": EXIT_OK,
    "truncated": EXIT_TRUNCATED,
    "input-exhausted": EXIT_INPUT_EXHAUSTED,
}


# ---------------------------------------------------------------------------
# run


def _cmd_run(args) -> int:
    stmt, names = _load(args.file)
    init = _parse_init(args.init, names)
    pure = is_pure(stmt)
    emit = args.emit or ("states" if pure else "events")

    if emit == "states":
        if not pure:
            raise CliError("states output requires a program without input/output")
        return _run_states(stmt, names, init, args)
    if emit == "summary":
        return _run_summary(stmt, names, init, args)
    return _run_events(stmt, names, init, args)


def _trace_for(stmt, init, mode):
    return trace.eval_trace(stmt, init) if mode == "big" else trace.norm(stmt, init)


def _res_for(stmt, init, mode):
    if mode == "big":
        return resumption.eval_res(stmt, init)
    return resumption.norm_res(stmt, init)


def _iter_trace(t, fuel):
    """Yield ('state', s) observations, then ('ended',) or ('truncated',)."""
    for _ in range(fuel):
        s, tail = t.step()
        yield ("state", s)
        if tail is None:
            yield ("ended",)
            return
        t = tail
    s, tail = t.step()
    if tail is None:
        yield ("state", s)
        yield ("ended",)
        return
    yield ("truncated",)


def _run_states(stmt, names, init, args) -> int:
    status = "truncated"
    for ev in _iter_trace(_trace_for(stmt, init, args.mode), args.fuel):
        if ev[0] == "state":
            if args.json:
                print(json.dumps({"tag": "state", "state": _state_dict(ev[1], names)}),
                      flush=True)
            else:
                print(_render_state(ev[1], names), flush=True)
        else:
            status = ev[0]
            if args.json:
                print(json.dumps({"tag": status}), flush=True)
            else:
                print(status, flush=True)
    return EXIT_OK if status == "ended" else EXIT_TRUNCATED


def _input_source(args):
    if args.interactive:
        def next_input():
            while True:
                print("? ", end="", file=sys.stderr, flush=True)
                line = sys.stdin.readline()
                if not line:
                    return None
                try:
                    return wrap(int(line.strip()))
                except ValueError:
                    print("please enter an integer", file=sys.stderr, flush=True)
        return next_input
    script = iter(_parse_vals(args.script or ""))
    return lambda: next(script, None)


def _run_events(stmt, names, init, args) -> int:
    last = "truncated"
    # the head is not kept: memoized tails would otherwise retain the prefix
    for ev in resumption.drive(_res_for(stmt, init, args.mode),
                               _input_source(args), args.fuel):
        _print_event(ev, names, args.json)
        last = ev[0]
    return _EVENT_EXIT.get(last, EXIT_OK)


def _run_summary(stmt, names, init, args) -> int:
    if is_pure(stmt):
        prefix = trace.take(_trace_for(stmt, init, args.mode), args.fuel)
        final = prefix.states[-1]
        line = f"status={prefix.status} steps={len(prefix.states)}"
        if prefix.ended:
            line += f" state={_render_state(final, names)}"
        print(line)
        return EXIT_OK if prefix.ended else EXIT_TRUNCATED
    events = list(resumption.drive(_res_for(stmt, init, args.mode),
                                   _input_source(args), args.fuel))
    last = events[-1]
    counts = {"in": 0, "out": 0, "delay": 0}
    for ev in events:
        if ev[0] in counts:
            counts[ev[0]] += 1
    status = {"ret": "ret"}.get(last[0], last[0])
    line = (f"status={status} in={counts['in']} out={counts['out']}"
            f" delay={counts['delay']}")
    if last[0] == "ret":
        line += f" state={_render_state(last[1], names)}"
    print(line)
    return _EVENT_EXIT.get(last[0], EXIT_OK)


# ---------------------------------------------------------------------------
# compare


def _cmd_compare(args) -> int:
    stmt, names = _load(args.file)
    init = _parse_init(args.init, names)
    if is_pure(stmt):
        verdict = checks.trace_eq(
            trace.eval_trace(stmt, init), trace.norm(stmt, init), args.fuel
        )
        if isinstance(verdict, checks.EquivalentUpToBounds):
            print(f"agree up to fuel {args.fuel}")
            return EXIT_OK
        idx, left, right = verdict.witness
        print(f"diverged at step {idx}: big={left} small={right}")
        return EXIT_ERROR
    script = _parse_vals(args.script or "")
    big = resumption.run_events(resumption.eval_res(stmt, init), script, args.fuel)
    small = resumption.run_events(resumption.norm_res(stmt, init), script, args.fuel)
    for i, (b, s) in enumerate(zip(big, small)):
        if b != s:
            print(f"diverged at event {i}: big={b} small={s}")
            return EXIT_ERROR
    if len(big) != len(small):
        print(f"diverged at event {min(len(big), len(small))}: log lengths"
              f" {len(big)} vs {len(small)}")
        return EXIT_ERROR
    print(f"agree up to fuel {args.fuel}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# bisim / responsive


def _render_path(path) -> str:
    parts = []
    for step in path:
        if step[0] == "in":
            parts.append(f"in {step[1]}")
        elif step[0] == "out":
            parts.append(f"out {step[1]}")
        elif step[0] == "mismatch":
            parts.append(f"mismatch {step[1]} vs {step[2]}")
        else:
            parts.append(step[0])
    return " ; ".join(parts) if parts else "(start)"


def _cmd_bisim(args) -> int:
    stmt_a, names_a = _load(args.file_a)
    stmt_b, names_b = _load(args.file_b)
    cfg = checks.BisimConfig(
        delay_budget=args.delay_budget,
        depth_budget=args.depth_budget,
        input_sample=tuple(_parse_vals(args.sample)),
    )
    r0 = resumption.eval_res(stmt_a, State.empty())
    r1 = resumption.eval_res(stmt_b, State.empty())
    verdict = checks.delay_bisim(r0, r1, cfg)
    if isinstance(verdict, checks.EquivalentUpToBounds):
        print("equivalent up to bounds")
        return EXIT_OK
    if isinstance(verdict, checks.Distinguished):
        print(f"distinguished: {_render_path(verdict.witness)}")
        return EXIT_DISTINGUISHED
    print(f"budget exhausted ({verdict.budget}): {_render_path(verdict.path)}")
    return EXIT_BUDGET


def _cmd_responsive(args) -> int:
    stmt, names = _load(args.file)
    verdict = checks.responsive(
        resumption.eval_res(stmt, State.empty()),
        latency_budget=args.latency_budget,
        depth_budget=args.depth_budget,
        input_sample=tuple(_parse_vals(args.sample)),
    )
    if isinstance(verdict, checks.ResponsiveUpToBounds):
        print("responsive up to bounds")
        return EXIT_OK
    if isinstance(verdict, checks.LatencyExceeded):
        print(f"latency exceeded: {_render_path(verdict.path)}")
        return EXIT_DISTINGUISHED
    print(f"budget exhausted ({verdict.budget}): {_render_path(verdict.path)}")
    return EXIT_BUDGET


def _cmd_parse(args) -> int:
    stmt, names = _load(args.file)
    print(pretty(stmt, names))
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="coind-while",
        description="Total interpreters and checkers for While with I/O.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a program")
    run.add_argument("file")
    run.add_argument("--mode", choices=["big", "small"], default="big")
    run.add_argument("--fuel", type=int, default=10000)
    run.add_argument("--script", help="comma-separated input values")
    run.add_argument("--interactive", action="store_true",
                     help="read input values from stdin")
    run.add_argument("--emit", choices=["events", "states", "summary"])
    run.add_argument("--init", default="", help="initial state, e.g. x=5,y=7")
    run.add_argument("--json", action="store_true")
    run.set_defaults(func=_cmd_run)

    cmp_ = sub.add_parser("compare", help="diff the big- and small-step runs")
    cmp_.add_argument("file")
    cmp_.add_argument("--fuel", type=int, default=10000)
    cmp_.add_argument("--script", help="comma-separated input values")
    cmp_.add_argument("--init", default="")
    cmp_.set_defaults(func=_cmd_compare)

    bis = sub.add_parser("bisim", help="check two programs for delay-bisimilarity")
    bis.add_argument("file_a")
    bis.add_argument("file_b")
    bis.add_argument("--delay-budget", type=int, default=16)
    bis.add_argument("--depth-budget", type=int, default=64)
    bis.add_argument("--sample", default="0,1,-1",
                     help="input values used to probe input branching")
    bis.set_defaults(func=_cmd_bisim)

    rsp = sub.add_parser("responsive", help="check a program for responsiveness")
    rsp.add_argument("file")
    rsp.add_argument("--latency-budget", type=int, default=8)
    rsp.add_argument("--depth-budget", type=int, default=64)
    rsp.add_argument("--sample", default="0,1,-1")
    rsp.set_defaults(func=_cmd_responsive)

    par = sub.add_parser("parse", help="parse and pretty-print a program")
    par.add_argument("file")
    par.set_defaults(func=_cmd_parse)

    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if getattr(args, "interactive", False) and getattr(args, "script", None):
        return _die("--interactive and --script are mutually exclusive")
    try:
        return args.func(args)
    except CliError as exc:
        return _die(str(exc))
    except trace.ImpureProgramError as exc:
        return _die(str(exc))


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
