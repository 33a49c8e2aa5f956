"""Compare the compiled and pure-Python word kernels.

Run ``python benchmarks/bench_kernels.py``. Each workload is timed with both
backends and the outputs are checked to agree.
"""

from __future__ import annotations

import random
import timeit

from twistlab import kernels
from twistlab.expressions import evaluate_source
from twistlab.relations import load_catalog, mutants
from twistlab.surface import build_model

D6 = "(T(5,6)*T(1,4)*T(4,5)*T(3,4)*T(2,3)*T(1,2))^5*(T(5,6)*T(4,5)*T(3,4)*T(2,3)*T(1,2))^-6"


def reduce_workload() -> object:
    rng = random.Random(7)
    words = [tuple(rng.choice((1, -1, 2, -2, 3, -3)) for _ in range(5000)) for _ in range(20)]
    return [kernels.reduce_letters(w, 3, 10**6) for w in words]


def d6_workload() -> object:
    return evaluate_source(D6, build_model(6)).evaluate()


def deep_power_workload() -> object:
    return evaluate_source("(T(1,2)*T(2,3)*T(3,4)*U)^12", build_model(4)).evaluate()


def mutation_workload() -> object:
    fixtures = [f for f in load_catalog() if f.id in ("R-D6", "R-vsq-even-1")]
    return [m.status for f in fixtures for m in mutants(f)]


WORKLOADS = {
    "reduce 20 x 5000 letters": reduce_workload,
    "evaluate D6 word": d6_workload,
    "(T12 T23 T34 U)^12 in N4": deep_power_workload,
    "mutation sweep of two k=6 fixtures": mutation_workload,
}


def main() -> None:
    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)}")
    for name, fn in WORKLOADS.items():
        times, outputs = {}, {}
        for backend in backends:
            kernels.use_backend(backend)
            outputs[backend] = fn()
            times[backend] = min(timeit.repeat(fn, number=1, repeat=5))
        agree = len({repr(o) for o in outputs.values()}) == 1
        cols = "  ".join(f"{b}={t * 1000:8.2f} ms" for b, t in times.items())
        speedup = (
            f"  speedup x{times['python'] / times['compiled']:.1f}" if "compiled" in times else ""
        )
        print(f"{name:38} {cols}{speedup}  outputs agree: {agree}")


if __name__ == "__main__":
    main()
