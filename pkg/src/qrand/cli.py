"""Command-line front end: build, certify, attack, diagnose, sweep.

All reports are JSON (CSV for sweeps); identical invocations with the same
seed produce identical output, except the runtime_ms column of sweeps.
Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time

from .channel import (
    PauliChannel,
    aghp_channel,
    certified_epsilon,
    channel_from_space,
    fourier_coeffs,
    qotp,
    random_pauli_channel,
)
from .errors import QrandError
from .smallbias import SampleSpace, aghp_space, max_bias
from .verify import diagnose, empirical_epsilon


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, obj) -> None:
    _emit(args, json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _load_space(path: str) -> SampleSpace:
    with open(path) as fh:
        return SampleSpace.from_text(fh.read())


def _load_channel(path: str) -> PauliChannel:
    with open(path) as fh:
        return PauliChannel.from_text(fh.read())


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    return int(os.environ.get("QRAND_THREADS", "1"))


def _cmd_space_build(args) -> int:
    if args.construction == "aghp":
        if args.r is None or args.s is None:
            raise QrandError("aghp construction needs --r and --s")
        space = aghp_space(args.r, args.s)
    else:
        if args.n is None:
            raise QrandError("full construction needs --n")
        space = SampleSpace.full_cube(args.n)
    with open(args.out, "w") as fh:
        fh.write(space.to_text())
    summary = {
        "report": "space-build",
        "construction": args.construction,
        "n": space.n,
        "size": space.size,
        "out": args.out,
    }
    if args.construction == "aghp":
        summary["r"] = args.r
        summary["s"] = args.s
        summary["bias_bound"] = (args.s - 1) / 2.0 ** args.r
    sys.stdout.write(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return 0


def _cmd_space_bias(args) -> int:
    space = _load_space(args.infile)
    report = max_bias(space, max_weight=args.max_weight)
    _emit_json(args, {
        "report": "bias",
        "n": space.n,
        "size": space.size,
        "max_bias": report.max_bias,
        "witness": report.witness.to_string(),
        "scanned": report.scanned,
        "max_weight": args.max_weight,
    })
    return 0


def _build_channel(args) -> PauliChannel:
    if args.scheme == "qotp":
        if args.n is None:
            raise QrandError("qotp scheme needs --n")
        return qotp(args.n)
    if args.scheme == "aghp":
        if args.n is None or args.epsilon is None:
            raise QrandError("aghp scheme needs --n and --epsilon")
        return aghp_channel(args.n, args.epsilon)
    if args.scheme == "random":
        if args.n is None or args.m is None:
            raise QrandError("random scheme needs --n and --m")
        return random_pauli_channel(args.n, args.m, args.seed)
    if args.scheme == "from-space":
        if args.space is None:
            raise QrandError("from-space scheme needs --space")
        return channel_from_space(_load_space(args.space))
    raise QrandError(f"unknown scheme {args.scheme!r}")


def _cmd_channel_build(args) -> int:
    ch = _build_channel(args)
    with open(args.out, "w") as fh:
        fh.write(ch.to_text())
    sys.stdout.write(json.dumps({
        "report": "channel-build",
        "scheme": args.scheme,
        "n": ch.n,
        "m": ch.size,
        "key_bits": ch.key_bits,
        "out": args.out,
    }, indent=2, sort_keys=True) + "\n")
    return 0


def _cmd_channel_certify(args) -> int:
    ch = _load_channel(args.infile)
    delta = fourier_coeffs(ch).max_nontrivial()
    _emit_json(args, {
        "report": "certify",
        "n": ch.n,
        "m": ch.size,
        "key_bits": ch.key_bits,
        "delta": delta,
        "certified_epsilon": 2.0 ** (ch.n / 2.0) * delta,
    })
    return 0


def _cmd_channel_attack(args) -> int:
    ch = _load_channel(args.infile)
    report = empirical_epsilon(
        ch,
        probes=args.probes,
        seed=args.seed,
        norm_kind=args.norm,
        families=tuple(args.families.split(",")) if args.families else (),
        threads=_threads(args),
    )
    _emit_json(args, report.to_dict())
    return 0


def _cmd_channel_diagnose(args) -> int:
    ch = _load_channel(args.infile)
    _emit_json(args, diagnose(ch, seed=args.seed).to_dict())
    return 0


def _cmd_sweep_random(args) -> int:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "m", "seed", "epsilon_hat", "certified_epsilon", "runtime_ms"])
    for m in args.m_list:
        for s in range(args.seeds):
            seed = args.seed + s
            ch = random_pauli_channel(args.n, m, seed)
            t0 = time.perf_counter()
            report = empirical_epsilon(
                ch, probes=args.probes, seed=seed, threads=_threads(args)
            )
            ms = (time.perf_counter() - t0) * 1000.0
            writer.writerow([
                args.n, m, seed,
                f"{report.epsilon_hat:.17g}",
                f"{certified_epsilon(ch):.17g}",
                f"{ms:.3f}",
            ])
    _emit(args, buf.getvalue())
    return 0


def _m_list(text: str) -> list[int]:
    items = [tok for tok in text.split(",") if tok.strip()]
    if not items:
        raise argparse.ArgumentTypeError("m-list must not be empty")
    try:
        return [int(tok) for tok in items]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qrand",
        description="Build, certify, attack and diagnose Pauli randomizing channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    space = sub.add_parser("space", help="sample-space operations")
    space_sub = space.add_subparsers(dest="subcommand", required=True)

    sb = space_sub.add_parser("build", help="write a sample space file")
    sb.add_argument("--construction", choices=["aghp", "full"], required=True)
    sb.add_argument("--r", type=int)
    sb.add_argument("--s", type=int)
    sb.add_argument("--n", type=int)
    sb.add_argument("--out", required=True)
    sb.set_defaults(func=_cmd_space_build)

    sbias = space_sub.add_parser("bias", help="exhaustive bias certificate")
    sbias.add_argument("--in", dest="infile", required=True)
    sbias.add_argument("--max-weight", type=int, default=None)
    sbias.add_argument("--out")
    sbias.set_defaults(func=_cmd_space_bias)

    chan = sub.add_parser("channel", help="channel operations")
    chan_sub = chan.add_subparsers(dest="subcommand", required=True)

    cb = chan_sub.add_parser("build", help="write a channel file")
    cb.add_argument("--scheme", choices=["qotp", "aghp", "random", "from-space"],
                    required=True)
    cb.add_argument("--n", type=int)
    cb.add_argument("--epsilon", type=float)
    cb.add_argument("--m", type=int)
    cb.add_argument("--seed", type=int, default=0)
    cb.add_argument("--space")
    cb.add_argument("--out", required=True)
    cb.set_defaults(func=_cmd_channel_build)

    cc = chan_sub.add_parser("certify", help="Fourier certificate")
    cc.add_argument("--in", dest="infile", required=True)
    cc.add_argument("--out")
    cc.set_defaults(func=_cmd_channel_certify)

    ca = chan_sub.add_parser("attack", help="worst-case state search")
    ca.add_argument("--in", dest="infile", required=True)
    ca.add_argument("--probes", type=int, default=200)
    ca.add_argument("--seed", type=int, default=0)
    ca.add_argument("--norm", choices=["trace", "frobenius", "infinity"],
                    default="trace")
    ca.add_argument("--families", default="product,cat,stabilizer",
                    help="comma list from {product,cat,stabilizer}; empty for none")
    ca.add_argument("--threads", type=int, default=None)
    ca.add_argument("--out")
    ca.set_defaults(func=_cmd_channel_attack)

    cd = chan_sub.add_parser("diagnose", help="necessary-condition maxima")
    cd.add_argument("--in", dest="infile", required=True)
    cd.add_argument("--seed", type=int, default=0)
    cd.add_argument("--out")
    cd.set_defaults(func=_cmd_channel_diagnose)

    sweep = sub.add_parser("sweep", help="parameter sweeps")
    sweep_sub = sweep.add_subparsers(dest="subcommand", required=True)

    sr = sweep_sub.add_parser("random", help="epsilon-hat vs operator count")
    sr.add_argument("--n", type=int, required=True)
    sr.add_argument("--m-list", type=_m_list, required=True)
    sr.add_argument("--seeds", type=int, required=True)
    sr.add_argument("--probes", type=int, default=200)
    sr.add_argument("--seed", type=int, default=0)
    sr.add_argument("--threads", type=int, default=None)
    sr.add_argument("--format", choices=["csv"], default="csv")
    sr.add_argument("--out")
    sr.set_defaults(func=_cmd_sweep_random)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (QrandError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
