"""Regenerate the sample module files in data/modules/.

Each RB-module file is a canonical block model transported by a seeded random
element of GL_n(A), written in canonical form.
"""

import argparse
from pathlib import Path

from rbmod.modfile import dump_module, dump_rsd
from rbmod.rsdmod import ModuleType
from rbmod.sampling import random_rsd

RSD_FILES = {
    "rsd_111.mod": (ModuleType(1, 1, 1), 11),
    "rsd_010.mod": (ModuleType(0, 1, 0), 3),
    "rsd_010_b.mod": (ModuleType(0, 1, 0), 4),
    "rsd_020.mod": (ModuleType(0, 2, 0), 5),
    "rsd_100.mod": (ModuleType(1, 0, 0), 6),
    "rsd_211.mod": (ModuleType(2, 1, 1), 7),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data" / "modules"))
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, (mtype, seed) in RSD_FILES.items():
        rsd = random_rsd(mtype, seed)
        assert rsd.type == mtype
        (out / name).write_text(dump_rsd(rsd, f"canonical_rsd{mtype} transported by random_invertible(seed={seed})"))
        print(name, mtype)
    # a submodule without a singular section, with redundant generators
    text = dump_module(3, rsd.field, ([["1", "t", "0"]], [["0", "t^2", "1"], ["0", "t^3", "t"], ["0", "0", "t^-1"]]))
    text = "# submodule only: A*(1,t,0) + O*{(0,t^2,1), (0,t^3,t), (0,0,t^-1)}\n" + text
    (out / "submodule_3.mod").write_text(text)
    print("submodule_3.mod")
    bad = ("# not a decomposition: M = O and N = k[t^-1]*1 meet in k\n"
           "ambient = 1\nregular:\n  a_span = []\n  gens = [1]\nsingular:\n  a_span = []\n  gens = [1]\n")
    (out / "not_rsd.mod").write_text(bad)
    print("not_rsd.mod")


if __name__ == "__main__":
    main()
