"""Compare the numba and numpy kernel paths.

Each backend runs in its own interpreter with ``RECTFCA_BACKEND`` set, so the
env flag is what picks the path, the same way a user would pick it.

    python3 benchmarks/bench_backends.py --repeat 5
"""

from __future__ import annotations

import argparse
import json
import os
import statistics
import subprocess
import sys

CHILD = """
import json, sys
from rectfca import bench, kernels
m, k, repeat = map(int, sys.argv[1:4])
rows = [bench.run(m=m, k=k, seed=0, backends=(kernels.DEFAULT_BACKEND,))[0] for _ in range(repeat)]
print(json.dumps(rows))
"""


def measure(backend: str, m: int, k: int, repeat: int) -> list[dict]:
    env = {**os.environ, "RECTFCA_BACKEND": backend}
    out = subprocess.run(
        [sys.executable, "-c", CHILD, str(m), str(k), str(repeat)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(out.stdout)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--objects", type=int, default=8124)
    p.add_argument("--n-extents", type=int, default=512)
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)

    summary = {}
    for backend in ("numba", "numpy"):
        rows = measure(backend, args.objects, args.n_extents, args.repeat)
        assert all(r["backend"] == backend for r in rows)
        summary[backend] = {
            "reduce": statistics.median(r["reduce_seconds"] for r in rows),
            "enumerate": statistics.median(r["enum_seconds"] for r in rows),
            "removed": rows[0]["removed"],
            "concepts": rows[0]["concepts"],
        }
        print(f"{backend:>6}: reduce {summary[backend]['reduce']:.4f} s  "
              f"enumerate {summary[backend]['enumerate']:.4f} s  "
              f"(removed {rows[0]['removed']} columns, {rows[0]['concepts']} concepts)")

    nb, np_ = summary["numba"], summary["numpy"]
    if (nb["removed"], nb["concepts"]) != (np_["removed"], np_["concepts"]):
        sys.exit("backends disagree")
    print(f"speedup: reduce x{np_['reduce'] / nb['reduce']:.1f}, "
          f"enumerate x{np_['enumerate'] / nb['enumerate']:.1f}")


if __name__ == "__main__":
    main()
