#!/usr/bin/env python3
"""Reproduce the time-domain skin-effect experiment for one parameter set:
poke at site 20, record the wavefield, total energy, site-1 spectrogram,
and the biorthogonal decompositions onto the GBZ and the OBC eigenmodes.

Thin wrapper around the ``nhskin`` CLI pipelines so every artifact lands
in one directory.
"""

import argparse
import sys

from nhskin.cli import main as nhskin_main


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--preset", default="fig4a",
                    choices=["fig4a", "fig4e", "fig4i"],
                    help="experimental parameter set")
    ap.add_argument("--out", default=None, help="output directory "
                    "(default out/dynamics_<preset>)")
    ap.add_argument("--config", default=None,
                    help="optional config file overriding the preset")
    args = ap.parse_args()
    out = args.out or f"out/dynamics_{args.preset}"

    common = ["--preset", args.preset, "--out", out, "--format", "both"]
    if args.config:
        common += ["--config", args.config]
    for command in ("spectrum", "gbz", "evolve", "project"):
        rc = nhskin_main([command, *common])
        if rc != 0:
            return rc
    print(f"artifacts written to {out}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
