"""Command-line front end.

    chaosimg encrypt --key k.txt --in plain.pgm --out cipher.cse
    chaosimg decrypt --key k.txt --in cipher.cse --out plain.pgm
    chaosimg metrics --a plain.pgm --b cipher.pgm
    chaosimg analyze bifurcate|lyapunov|phase|histogram ... --out data.csv

Exit codes: 0 success, 1 IO/format failure, 2 validation failure.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import analysis, netpbm
from .cipher import CipherEnvelope, decrypt, encrypt
from .errors import ChaosImgError, KeyFileError
from .keyfile import load_key_file
from .maps import MapId, MapParams

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2


def _fail(message: str, code: int) -> int:
    print(f"chaosimg: error: {message}", file=sys.stderr)
    return code


def _load_image(path):
    with open(path, "rb") as fh:
        return netpbm.read_image(fh.read())


def _cmd_encrypt(args) -> int:
    try:
        keys = load_key_file(args.key)
    except KeyFileError as exc:
        return _fail(str(exc), EXIT_VALIDATION)
    except OSError as exc:
        return _fail(str(exc), EXIT_IO)
    try:
        image = _load_image(args.infile)
        envelope = encrypt(image, keys)
        with open(args.outfile, "wb") as fh:
            fh.write(envelope.to_bytes())
    except (ChaosImgError, OSError) as exc:
        return _fail(str(exc), EXIT_IO)
    return EXIT_OK


def _cmd_decrypt(args) -> int:
    try:
        keys = load_key_file(args.key)
    except KeyFileError as exc:
        return _fail(str(exc), EXIT_VALIDATION)
    except OSError as exc:
        return _fail(str(exc), EXIT_IO)
    try:
        with open(args.infile, "rb") as fh:
            envelope = CipherEnvelope.from_bytes(fh.read())
        image = decrypt(envelope, keys)
        with open(args.outfile, "wb") as fh:
            fh.write(netpbm.write_image(image))
    except (ChaosImgError, OSError) as exc:
        return _fail(str(exc), EXIT_IO)
    return EXIT_OK


def _cmd_metrics(args) -> int:
    try:
        img_a = _load_image(args.a)
        img_b = _load_image(args.b)
        mse_value = analysis.mse(img_a, img_b)
    except (ChaosImgError, OSError) as exc:
        return _fail(str(exc), EXIT_IO)
    psnr_value = analysis.psnr(mse_value)
    print(f"mse={mse_value:.3f}")
    print("psnr=inf" if math.isinf(psnr_value) else f"psnr={psnr_value:.3f}")
    return EXIT_OK


def _map_params(args) -> MapParams:
    map_id = MapId.MAP1 if args.map == 1 else MapId.MAP2
    return MapParams(
        map_id=map_id,
        r=args.r if args.r is not None else (17.0 if map_id is MapId.MAP1 else 2.35),
        a=args.a,
        b=args.b,
        x0=args.x0,
        y0=args.y0,
        transient=args.transient,
    )


def _cmd_analyze(args) -> int:
    try:
        if args.analysis == "bifurcate":
            if args.r_min > args.r_max or args.r_step <= 0:
                return _fail("require r-min <= r-max and r-step > 0", EXIT_VALIDATION)
            points = analysis.bifurcation_sweep(
                _map_params(args), args.r_min, args.r_max, args.r_step,
                transient=args.transient, samples=args.samples,
            )
            analysis.write_bifurcation_csv(args.out, points)
        elif args.analysis == "lyapunov":
            if args.r is None:
                return _fail("lyapunov requires --r", EXIT_VALIDATION)
            lam = analysis.lyapunov_exponent(_map_params(args), steps=args.steps)
            analysis.write_lyapunov_csv(args.out, [(args.r, lam)])
        elif args.analysis == "phase":
            points = analysis.phase_points(_map_params(args), count=args.count)
            analysis.write_phase_csv(args.out, points)
        else:  # histogram
            hist = analysis.histogram(_load_image(args.infile))
            analysis.write_histogram_csv(args.out, hist)
    except ValueError as exc:
        return _fail(str(exc), EXIT_VALIDATION)
    except (ChaosImgError, OSError) as exc:
        return _fail(str(exc), EXIT_IO)
    return EXIT_OK


def _add_map_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--map", type=int, choices=(1, 2), default=1)
    parser.add_argument("--r", type=float, default=None)
    parser.add_argument("--a", type=float, default=0.5)
    parser.add_argument("--b", type=float, default=0.3)
    parser.add_argument("--x0", type=float, default=0.1)
    parser.add_argument("--y0", type=float, default=0.1)
    parser.add_argument("--transient", type=int, default=1000)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chaosimg")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encrypt", help="encrypt a P5/P6 image into an envelope")
    p.add_argument("--key", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile", required=True)
    p.set_defaults(func=_cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt an envelope back to a P5/P6 image")
    p.add_argument("--key", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile", required=True)
    p.set_defaults(func=_cmd_decrypt)

    p = sub.add_parser("metrics", help="print MSE/PSNR between two images")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=_cmd_metrics)

    p = sub.add_parser("analyze", help="dynamics and histogram CSV reports")
    asub = p.add_subparsers(dest="analysis", required=True)

    pb = asub.add_parser("bifurcate")
    _add_map_flags(pb)
    pb.add_argument("--r-min", type=float, required=True)
    pb.add_argument("--r-max", type=float, required=True)
    pb.add_argument("--r-step", type=float, required=True)
    pb.add_argument("--samples", type=int, default=200)
    pb.add_argument("--out", required=True)
    pb.set_defaults(func=_cmd_analyze)

    pl = asub.add_parser("lyapunov")
    _add_map_flags(pl)
    pl.add_argument("--steps", type=int, default=10000)
    pl.add_argument("--out", required=True)
    pl.set_defaults(func=_cmd_analyze)

    pp = asub.add_parser("phase")
    _add_map_flags(pp)
    pp.add_argument("--count", type=int, default=1000)
    pp.add_argument("--out", required=True)
    pp.set_defaults(func=_cmd_analyze)

    ph = asub.add_parser("histogram")
    ph.add_argument("--in", dest="infile", required=True)
    ph.add_argument("--out", required=True)
    ph.set_defaults(func=_cmd_analyze)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


def entry() -> None:
    sys.exit(main())
