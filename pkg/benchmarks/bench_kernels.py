"""Time the compiled and pure-Python permutation kernels on the 10368-element
closure of the M/alpha/beta involutions plus T_M.

    python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

from groupoid_music.instance import load_instance
from groupoid_music.kernels import available_backends
from groupoid_music.packaged import permutation_rep

GENERATORS = ["I_Malpha", "I_Mbeta", "I_alphabeta", "T_M"]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), result


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    inst = load_instance("MAlphaBeta")
    gens = [permutation_rep(inst.action, inst.operator(n)) for n in GENERATORS]
    rows = []
    for name, mod in sorted(available_backends().items()):
        t_closure, (elements, _, _) = best_of(lambda: mod.closure(gens, 36, 10 ** 6), args.repeat)
        t_orders, orders = best_of(lambda: mod.element_orders(elements), args.repeat)
        rows.append((name, len(elements), max(orders), t_closure, t_orders))

    print(f"{'backend':<8} {'order':>6} {'exponent':>8} {'closure s':>10} {'orders s':>9}")
    for name, order, exponent, tc, to in rows:
        print(f"{name:<8} {order:>6} {exponent:>8} {tc:>10.4f} {to:>9.4f}")
    if len(rows) == 2:
        (_, _, _, tc_c, to_c), (_, _, _, tc_p, to_p) = rows
        print(f"speedup  closure x{tc_p / tc_c:.1f}, element orders x{to_p / to_c:.1f}")


if __name__ == "__main__":
    main()
