"""Command-line front end.

Exit codes: 0 success, 1 operation failure (e.g. attack did not break the
key), 2 usage error (bad flags, malformed files).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import attack as attack_mod
from . import bench as bench_mod
from . import cryptosystem as cs
from . import diophantine as dio
from . import lattice as lat

USAGE_ERROR = 2
OP_FAILURE = 1


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ValueError(f"cannot read JSON file {path}: {e}") from e


def _dump_json(path: str, obj: dict) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def cmd_keygen(args) -> int:
    params = cs.SchemeParams(
        n=args.n, subsets=args.subsets, group_size=args.group_size,
        take=args.take, slack_bits=args.slack_bits,
    )
    pk, sk = cs.keygen(params, args.seed)
    _dump_json(args.pub, cs.public_key_to_dict(pk))
    _dump_json(args.priv, cs.private_key_to_dict(sk, params))
    print(f"wrote public key ({params.n} weights) to {args.pub}")
    print(f"wrote private key (p of {sk.p.bit_length()} bits) to {args.priv}")
    return 0


def cmd_encrypt(args) -> int:
    pk = cs.public_key_from_dict(_load_json(args.pub))
    with open(args.infile, "rb") as fh:
        message = fh.read()
    ct = cs.encrypt(pk, message)
    _dump_json(args.out, cs.ciphertext_to_dict(ct))
    print(f"encrypted {len(message)} bytes into {len(ct.blocks)} block(s)")
    return 0


def cmd_decrypt(args) -> int:
    sk, params = cs.private_key_from_dict(_load_json(args.priv))
    ct = cs.ciphertext_from_dict(_load_json(args.infile))
    try:
        message = cs.decrypt(sk, params, ct)
    except (cs.CorruptCiphertextError, cs.KeyIncompatibilityError, ValueError) as e:
        print(f"decryption failed: {e}", file=sys.stderr)
        return OP_FAILURE
    with open(args.out, "wb") as fh:
        fh.write(message)
    print(f"decrypted {len(message)} bytes to {args.out}")
    return 0


def cmd_attack(args) -> int:
    pk = cs.public_key_from_dict(_load_json(args.pubkey))
    ct = cs.ciphertext_from_dict(_load_json(args.ciphertext))
    kwargs = {}
    if args.ell_sweep:
        kwargs["ell_sweep"] = tuple(args.ell_sweep)
    if args.lambda_exp_range:
        lo, hi = args.lambda_exp_range
        kwargs["lambda_exp_offsets"] = tuple(range(lo, hi + 1))
    if args.max_candidates:
        kwargs["max_candidates"] = args.max_candidates
    config = attack_mod.AttackConfig(**kwargs)
    report = attack_mod.full_attack(pk, ct, config)
    if args.json_report:
        _dump_json(args.json_report, attack_mod.report_to_dict(report))
    if report.success:
        print(f"ATTACK SUCCEEDED after {report.candidates_tried} candidate(s); "
              f"U'={report.equivalent_key.u_prime}, p'={report.equivalent_key.p_prime}")
        if args.out:
            with open(args.out, "wb") as fh:
                fh.write(report.plaintext)
            print(f"recovered plaintext written to {args.out}")
        else:
            print(f"recovered plaintext (hex): {report.plaintext.hex()}")
        return 0
    print(f"ATTACK FAILED after {report.candidates_tried} candidate(s)")
    return OP_FAILURE


def cmd_lll(args) -> int:
    basis = lat.matrix_from_dict(_load_json(args.infile))
    delta = Fraction(args.delta)
    reduced, swaps = lat.lll_reduce_with_stats(basis, delta)
    _dump_json(args.out, lat.matrix_to_dict(reduced))
    print(f"reduced {basis.m}x{basis.dim} basis with {swaps} swap(s)")
    return 0


def cmd_sda(args) -> int:
    problem = dio.problem_from_dict(_load_json(args.infile))
    sol = dio.solve_sda(problem)
    if sol is None:
        print("no admissible approximation found", file=sys.stderr)
        return OP_FAILURE
    _dump_json(args.out, dio.solution_to_dict(sol))
    print(f"q={sol.q}, max |q*a_i - p_i| = {sol.quality}")
    return 0


def cmd_bench(args) -> int:
    grid = bench_mod.TrialGrid(
        n_values=tuple(args.n_values),
        trials_per_point=args.trials,
        seed_base=args.seed_base,
    )
    records = bench_mod.run_grid(grid)
    with open(args.out, "w", newline="") as fh:
        bench_mod.write_csv(records, fh)
    for row in bench_mod.summarize(records):
        print(f"n={row['n']:4d}  success {row['successes']}/{row['trials']} "
              f"({row['success_rate']:.0%})  median {row['median_wall_ms']:.0f} ms")
    print(f"records written to {args.out}")
    return 0


def cmd_demo(args) -> int:
    params = cs.desk_params(16)
    pk, sk = cs.keygen(params, args.seed)
    message = f"demo message, seed {args.seed}".encode()
    ct = cs.encrypt(pk, message)
    print(f"desk-scale key: n={params.n}, p has {sk.p.bit_length()} bits")
    print(f"ciphertext: {len(ct.blocks)} block(s), D' = {ct.d_prime}")
    roundtrip = cs.decrypt(sk, params, ct)
    print(f"honest decryption ok: {roundtrip == message}")
    report = attack_mod.full_attack(pk, ct)
    if report.success and report.plaintext == message:
        print(f"ATTACK SUCCEEDED after {report.candidates_tried} candidate(s)")
        print(f"equivalent trapdoor: U'={report.equivalent_key.u_prime}, "
              f"p'={report.equivalent_key.p_prime}")
        print(f"recovered: {report.plaintext.decode()}")
        return 0
    print(f"ATTACK FAILED after {report.candidates_tried} candidate(s)")
    return OP_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="knapcrack",
        description="Knapsack cryptosystem toolkit and lattice key-recovery attack",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate a key pair")
    p.add_argument("--n", type=int, default=1360)
    p.add_argument("--subsets", type=int, default=8)
    p.add_argument("--group-size", type=int, default=170)
    p.add_argument("--take", type=int, default=128)
    p.add_argument("--slack-bits", type=int, default=8)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--pub", required=True)
    p.add_argument("--priv", required=True)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt a file under a public key")
    p.add_argument("--pub", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a ciphertext file")
    p.add_argument("--priv", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("attack", help="recover plaintext from public key + ciphertext")
    p.add_argument("--pubkey", required=True)
    p.add_argument("--ciphertext", required=True)
    p.add_argument("--out")
    p.add_argument("--ell-sweep", type=int, nargs="+")
    p.add_argument("--lambda-exp-range", type=int, nargs=2,
                   metavar=("LO", "HI"), help="offsets from n-l for lambda = 2^-e")
    p.add_argument("--max-candidates", type=int)
    p.add_argument("--json-report")
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("lll", help="LLL-reduce a rational matrix file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--delta", default="3/4")
    p.set_defaults(func=cmd_lll)

    p = sub.add_parser("sda", help="simultaneous Diophantine approximation")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sda)

    p = sub.add_parser("bench", help="seeded attack trial grid, CSV output")
    p.add_argument("--n-values", type=int, nargs="+", default=[16, 24, 32])
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed-base", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("demo", help="keygen -> encrypt -> attack at desk scale")
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_demo)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
