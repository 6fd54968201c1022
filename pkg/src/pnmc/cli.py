"""``pnmc`` command line: build, check, demo and gen."""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

from . import grouplib
from .aut import export_aut, export_dot
from .check import (
    DeadlockFree,
    Inevitably,
    expand_property_instances,
    check,
    label_signatures,
)
from .core import Lts, ModelError, TAU_LABEL, matches_any
from .dsl import DslError, ModelFile, PropertyFile, parse_model, parse_props, print_model
from .expand import StateExplosion, build_system, expand_net_vectors, find_root
from .product import LevelStats, compose_flat, compose_hierarchy
from .reduce import minimize_branching, minimize_strong

EXIT_OK, EXIT_PARSE, EXIT_INST, EXIT_CAP, EXIT_PROP = 0, 2, 3, 4, 5
MIN_MODES = ("none", "strong", "branching")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    model: Path
    props: Path | None = None
    inst: dict[str, Any] = field(default_factory=dict)
    cap: int | None = None
    net: str | None = None
    minimize: str = "none"
    hierarchical: bool = False
    output: Path | None = None
    dot: Path | None = None
    trace_dir: Path | None = None
    only: tuple[str, ...] = ()
    timing: bool = False


def parse_inst(text: str | None) -> dict[str, Any]:
    """``G=3,cap=2`` to a binding dict; ``true``/``false`` and integers are converted."""
    out: dict[str, Any] = {}
    if not text:
        return out
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        name, eq, value = item.partition("=")
        name, value = name.strip(), value.strip()
        if not eq or not name or not value:
            raise CliError(EXIT_INST, f"malformed binding {item!r}; expected NAME=VALUE")
        if value in ("true", "false"):
            out[name] = value == "true"
        else:
            try:
                out[name] = int(value)
            except ValueError:
                out[name] = value
    return out


def _read(path: Path) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from None


def load_model(path: Path) -> ModelFile:
    try:
        return parse_model(_read(path))
    except DslError as exc:
        raise CliError(EXIT_PARSE, f"{path}:{exc}") from None


def load_props(path: Path) -> PropertyFile:
    try:
        return parse_props(_read(path))
    except DslError as exc:
        raise CliError(EXIT_PARSE, f"{path}:{exc}") from None


def _guard(fn, *args, **kwargs):
    # map model errors raised while instantiating or exploring to exit codes
    try:
        return fn(*args, **kwargs)
    except StateExplosion as exc:
        raise CliError(EXIT_CAP, str(exc)) from None
    except ModelError as exc:
        raise CliError(EXIT_INST, str(exc)) from None


def _minimize(lts: Lts, mode: str) -> Lts:
    if mode == "strong":
        return minimize_strong(lts)
    if mode == "branching":
        return minimize_branching(lts)
    return lts


def format_table(rows: Sequence[LevelStats], timing: bool = False) -> str:
    head = ["Subsystem", "states", "transitions", "min states", "min transitions"]
    if timing:
        head.append("seconds")
    body = []
    for r in rows:
        cells = [r.name, str(r.states), str(r.transitions), str(r.min_states), str(r.min_transitions)]
        if timing:
            cells.append(f"{r.seconds:.2f}")
        body.append(cells)
    widths = [max(len(c[k]) for c in [head] + body) for k in range(len(head))]

    def line(cells):
        return " | ".join(c.ljust(w) if k == 0 else c.rjust(w) for k, (c, w) in enumerate(zip(cells, widths)))

    out = [line(head), "-+-".join("-" * w for w in widths)]
    out.extend(line(c) for c in body)
    return "\n".join(out)


def build_lts(model: ModelFile, cfg: RunConfig) -> tuple[Lts, list[LevelStats]]:
    """Compose the root net under ``cfg``; returns the final LTS and per-level counts."""
    system = _guard(build_system, model, cfg.inst, cfg.net, cfg.cap)
    stats: list[LevelStats] = []
    if cfg.hierarchical:
        lts = _guard(compose_hierarchy, system, cfg.minimize, cfg.cap, stats)
        return lts, stats
    t0 = time.perf_counter()
    raw = _guard(compose_flat, system, cfg.cap)
    lts = _minimize(raw, cfg.minimize)
    stats.append(LevelStats(system.name, raw.num_states, raw.num_transitions, lts.num_states,
                            lts.num_transitions, time.perf_counter() - t0))
    return lts, stats


def cmd_build(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    model = load_model(cfg.model)
    lts, stats = build_lts(model, cfg)
    target = cfg.output or Path(Path(cfg.model).stem + ".aut")
    target.write_text(export_aut(lts))
    if cfg.dot is not None:
        cfg.dot.write_text(export_dot(lts, Path(cfg.model).stem))
    print(format_table(stats, cfg.timing), file=out)
    return EXIT_OK


def _observed_signatures(model: ModelFile, cfg: RunConfig):
    root = _guard(find_root, model, cfg.net)
    vectors = _guard(expand_net_vectors, root, cfg.inst)
    pats = root.sort_patterns
    return label_signatures(gv.label for gv in vectors if gv.label != TAU_LABEL and matches_any(gv.label, pats))


def cmd_check(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    model = load_model(cfg.model)
    props = load_props(cfg.props)
    chosen = [p for p in props.props if not cfg.only or p.name in cfg.only]
    missing = set(cfg.only) - {p.name for p in props.props}
    if missing:
        raise CliError(EXIT_PARSE, f"no property named {', '.join(sorted(missing))}")

    # reachability checks use the requested reduction; deadlock and
    # inevitability use the unreduced (or strongly reduced) flat model
    main, _ = build_lts(model, cfg)
    needs_raw = any(isinstance(p.prop, (DeadlockFree, Inevitably)) for p in chosen)
    plain = None
    if needs_raw:
        if not cfg.hierarchical and cfg.minimize in ("none", "strong"):
            plain = main
        else:
            flat_cfg = RunConfig(cfg.model, inst=cfg.inst, cap=cfg.cap, net=cfg.net,
                                 minimize="strong" if cfg.minimize != "none" else "none")
            plain, _ = build_lts(model, flat_cfg)

    sigs = _observed_signatures(model, cfg)
    trace_dir = cfg.trace_dir or Path(".")
    failed = False
    for named in chosen:
        lts = plain if isinstance(named.prop, (DeadlockFree, Inevitably)) else main
        instances = expand_property_instances(named.prop, sigs)
        for k, (tag, prop) in enumerate(instances):
            res = check(lts, prop)
            print(f"PROP {named.name} {tag} = {'TRUE' if res.holds else 'FALSE'}", file=out)
            want = True if named.expect is None else named.expect
            failed |= res.holds != want
            if res.trace is not None:
                trace_dir.mkdir(parents=True, exist_ok=True)
                stem = named.name if len(instances) == 1 else f"{named.name}_{k}"
                (trace_dir / f"{stem}.trace").write_text("\n".join(res.trace.aut_lines()) + "\n")
    return EXIT_PROP if failed else EXIT_OK


def bundled(name: str) -> Path:
    return Path(str(resources.files("pnmc") / "models" / name))


def meeting_table(G: int, cap: int, state_cap: int | None = None) -> list[LevelStats]:
    """Counts for the participant, the initiator and the full system, before and after branching reduction."""
    model = grouplib.make_meeting_model(G, cap)
    inst = grouplib.meeting_instance(G, cap)
    rows = []
    for title, root in (("Single Participant", "Participant"), ("Initiator", "Initiator"),
                        (f"Full system, {G} participants, queue[{cap}]", "System")):
        t0 = time.perf_counter()
        raw = _guard(compose_flat, _guard(build_system, model, inst, root, state_cap), state_cap)
        small = minimize_branching(raw)
        rows.append(LevelStats(title, raw.num_states, raw.num_transitions, small.num_states,
                               small.num_transitions, time.perf_counter() - t0))
    return rows


def cmd_demo(G: int, cap: int, state_cap: int | None, timing: bool, trace_dir: Path | None, out=None) -> int:
    out = out or sys.stdout
    print(f"meeting scheduler, G={G}, cap={cap}", file=out)
    print(format_table(meeting_table(G, cap, state_cap), timing), file=out)
    print(file=out)
    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "meeting.pnt"
        path.write_text(print_model(grouplib.make_meeting_model(G, cap)))
        status = EXIT_OK
        for props in ("overflow.prop", "meeting.prop"):
            cfg = RunConfig(path, bundled(props), grouplib.meeting_instance(G, cap), state_cap,
                            trace_dir=trace_dir or Path(tmp) / "traces")
            print(f"# {props}", file=out)
            code = cmd_check(cfg, out)
            # overflow.prop expects the error, meeting.prop excludes it
            expected_fail = (props == "overflow.prop") == (cap >= 2)
            if code not in (EXIT_OK, EXIT_PROP):
                return code
            if (code == EXIT_PROP) != expected_fail:
                status = EXIT_PROP
    return status


def cmd_gen(G: int, cap: int, output: Path | None, out=None) -> int:
    out = out or sys.stdout
    text = print_model(grouplib.make_meeting_model(G, cap))
    if output is None:
        out.write(text)
    else:
        output.write_text(text)
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pnmc", description="Build, reduce and check parameterized networks of LTSs.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("model", type=Path, help=".pnt model file")
        p.add_argument("--inst", default="", help="parameter bindings, e.g. G=3,cap=2")
        p.add_argument("--net", help="root net (default: the only net not used as a filler)")
        p.add_argument("--min", dest="minimize", choices=MIN_MODES, default="none")
        p.add_argument("--hier", action="store_true", help="reduce every subsystem before composing it")
        p.add_argument("--state-cap", type=int, help="maximum states per product (default PNMC_STATE_CAP or 10^7)")
        p.add_argument("--timing", action="store_true", help="add a seconds column")

    b = sub.add_parser("build", help="compose a model and write it as AUT")
    common(b)
    b.add_argument("-o", "--output", type=Path, help="AUT output (default <model>.aut)")
    b.add_argument("--dot", type=Path, help="also write a DOT graph")

    c = sub.add_parser("check", help="check a property file on a model")
    common(c)
    c.add_argument("props", type=Path, help=".prop property file")
    c.add_argument("--trace-dir", type=Path, help="where witness traces go (default: current directory)")
    c.add_argument("--only", action="append", default=[], help="check only this property (repeatable)")

    for name, text in (("demo", "run the bundled case study"), ("gen", "print a bundled model as .pnt")):
        d = sub.add_parser(name, help=text)
        d.add_argument("case", choices=["meeting"])
        d.add_argument("--G", type=int, default=3)
        d.add_argument("--cap", type=int, default=2)
        if name == "demo":
            d.add_argument("--state-cap", type=int)
            d.add_argument("--timing", action="store_true")
            d.add_argument("--trace-dir", type=Path)
        else:
            d.add_argument("-o", "--output", type=Path)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.cmd in ("build", "check"):
            cfg = RunConfig(
                args.model,
                getattr(args, "props", None),
                parse_inst(args.inst),
                args.state_cap,
                args.net,
                args.minimize,
                args.hier,
                getattr(args, "output", None),
                getattr(args, "dot", None),
                getattr(args, "trace_dir", None),
                tuple(getattr(args, "only", ())),
                args.timing,
            )
            return cmd_build(cfg) if args.cmd == "build" else cmd_check(cfg)
        if args.G < 1 or args.cap < 1:
            raise CliError(EXIT_INST, "--G and --cap must be at least 1")
        if args.cmd == "demo":
            return cmd_demo(args.G, args.cap, args.state_cap, args.timing, args.trace_dir)
        return cmd_gen(args.G, args.cap, args.output)
    except CliError as exc:
        print(f"pnmc: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
