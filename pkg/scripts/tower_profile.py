"""Print dimensions, gate results and index profile of the standard towers."""

import argparse
import time

from corings.fixtures import dual_number_data, group_c2_data
from corings.frobenius import sweedler_frobenius_system
from corings.linalg import QQ
from corings.tower import IndexProfile, TowerConfig, build_tower, tower_index_profile

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--levels", type=int, default=4)
    ap.add_argument("--budget", type=int, default=4096)
    args = ap.parse_args()
    for name, data in (("dual numbers", dual_number_data()), ("Q[C2]", group_c2_data())):
        t0 = time.perf_counter()
        levels = build_tower(sweedler_frobenius_system(data), TowerConfig(args.levels, args.budget))
        print(f"{name}: dims {[levels[0].inclusion.source.dim] + [lvl.dim for lvl in levels]} ({time.perf_counter() - t0:.2f}s)")
        for lvl in levels:
            bad = [g for g, ok in lvl.gates.items() if not ok]
            print(f"  level {lvl.k}: {'all gates ok' if not bad else 'FAILED ' + ', '.join(bad)}")
        prof = tower_index_profile(levels)
        if isinstance(prof, IndexProfile):
            shown = ", ".join(f"({QQ.format(i.u)}:{QQ.format(i.v)})" for i in prof.indices)
            print(f"  indices {shown}, alternates={prof.alternates}")
        else:
            print(f"  not strongly coseparable: {prof.witness}")
