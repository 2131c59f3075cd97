#!/usr/bin/env python3
"""Run the realization sweep and the censuses for a range of ranks.

Usage examples:

  python scripts/run_sweeps.py --max-rank 3
  python scripts/run_sweeps.py --env-file .env.local --samples 20000 --parallel 4 --out-dir census_out

Environment variables used by default:
  MSRING_SEED
  MSRING_PARALLEL
  MSRING_MAX_CENSUS_RANK
"""

from __future__ import annotations

import argparse
import os
import random
import sys
import time
from pathlib import Path


ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

EXHAUSTIVE_RANK = 3


def load_env_file(env_file: str) -> None:
    env_path = (ROOT / env_file).resolve()
    if not env_path.exists():
        raise FileNotFoundError(f"Env file not found: {env_path}")
    os.environ["MSRING_ENV_FILE"] = str(env_path)
    from dotenv import load_dotenv

    load_dotenv(env_path, override=True)


def main() -> int:
    parser = argparse.ArgumentParser(description="Realization round trips and censuses over a rank range.")
    parser.add_argument(
        "--env-file",
        default="",
        help="Optional env file to load before importing msring, for example .env.local.",
    )
    parser.add_argument("--max-rank", type=int, default=None, help="Largest rank to sweep; defaults to MSRING_MAX_CENSUS_RANK.")
    parser.add_argument("--samples", type=int, default=10000, help="Random descriptors per w-class above the exhaustive ranks.")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--parallel", type=int, default=None)
    parser.add_argument("--out-dir", default="", help="Write census JSON files here.")
    args = parser.parse_args()

    if args.env_file:
        load_env_file(args.env_file)

    from msring import config
    from msring.classify import census, census_to_json, enumerate_pw
    from msring.f2core import F2Vector
    from msring.msforms import MsDescriptor, SymTrilinearForm
    from msring.realize import roundtrip

    config.set_verbose(True)
    max_rank = args.max_rank if args.max_rank is not None else config.MAX_CENSUS_RANK
    seed = args.seed if args.seed is not None else config.DEFAULT_SEED
    parallel = args.parallel if args.parallel is not None else config.DEFAULT_PARALLEL
    rng = random.Random(seed)
    out_dir = Path(args.out_dir) if args.out_dir else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)

    failures = 0
    for rho in range(1, max_rank + 1):
        for w_class in ("zero", "nonzero"):
            w = F2Vector.zero(rho) if w_class == "zero" else F2Vector.unit(rho, 0)
            space = enumerate_pw(rho, w)
            started = time.perf_counter()
            if rho <= EXHAUSTIVE_RANK:
                members = list(space.members())
            else:
                members = []
                for _ in range(args.samples):
                    bits = 0
                    for b in space.basis:
                        if rng.getrandbits(1):
                            bits ^= b
                    members.append(bits)
            bad = 0
            for bits in members:
                result = roundtrip(MsDescriptor(SymTrilinearForm(rho, bits), w))
                if not result.ok:
                    bad += 1
                    config.log("sweep", f"rho={rho} w={w_class} form={bits:#x}: {result.mismatch}", force=True)
            failures += bad
            config.log(
                "sweep",
                f"rho={rho} w={w_class} checked={len(members)} failed={bad} seconds={time.perf_counter() - started:.2f}",
            )

            if rho <= config.MAX_CENSUS_RANK:
                result = census(rho, w_class, parallel=parallel)
                if out_dir:
                    (out_dir / f"census_rho{rho}_{w_class}.json").write_text(census_to_json(result) + "\n", encoding="utf-8")

    if failures:
        print(f"ERROR: {failures} round trip failures.")
        return 1
    print("All sweeps passed.")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
