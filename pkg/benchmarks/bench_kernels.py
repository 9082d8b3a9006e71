"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N] [--batch N]

Shapes follow the 784-50-50-40-30-30-20-10 network at batch 64.
"""
import argparse
import timeit

import numpy as np

from arp import kernels
from arp.experiment import ExperimentConfig
from arp.layers import ArpHyper, build_network
from arp.numeric import make_rng
from arp.optim import Adam


def kernel_cases(k, batch, rng):
    X = rng.uniform(-1, 1, size=(batch, 784))
    W = rng.normal(0, 0.05, size=(50, 784))
    b = rng.normal(0, 0.1, size=50)
    xq = np.full(784, 1.1)
    u, rho = k.rotation(W, b, xq, 4.0, 1e-7)
    F, Z = k.dense_forward(X, W, b, rho)
    dZ = rng.normal(size=Z.shape)
    gain = rho / u
    logits = rng.normal(size=(batch, 10))
    labels = rng.integers(0, 10, size=batch)
    p, g = rng.normal(size=(50, 784)), rng.normal(size=(50, 784))
    m, v = np.zeros_like(p), np.ones_like(p)
    return {
        "rotation 50x784": lambda: k.rotation(W, b, xq, 4.0, 1e-7),
        "dense_forward 64x784->50": lambda: k.dense_forward(X, W, b, rho),
        "dense_backward (coupled)": lambda: k.dense_backward(X, W, F, dZ, rho, xq, gain, True),
        "sigmoid_forward 64x50": lambda: k.sigmoid_forward(Z),
        "softmax_xent 64x10": lambda: k.softmax_xent(logits, labels),
        "adam_update 50x784": lambda: k.adam_update(p, g, m, v, 1e-3, 0.9, 0.999, 0.5, 0.5, 1e-8),
        "count_saturated 64x50": lambda: k.count_saturated(Z, 4.0),
    }


def train_step(name, kind, batch, rng):
    model = build_network(ExperimentConfig().arch, kind, ArpHyper(), make_rng(0, 0), backend=name)
    opt = Adam(model.params(), backend=name)
    X = rng.uniform(0, 1, size=(batch, 784))
    y = rng.integers(0, 10, size=batch)

    def step():
        _, _, grads, _ = model.loss_and_grads(X, y)
        opt.step([g for pair in grads for g in pair])
    return step


def best_us(fn, repeat):
    number = max(1, int(2000 // repeat))
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number * 1e6


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=7)
    ap.add_argument("--batch", type=int, default=64)
    args = ap.parse_args(argv)
    names = kernels.available()
    if "cython" not in names:
        print("compiled extension not built; only the numpy backend is timed "
              "(build with `python setup.py build_ext --inplace`)")
    timings = {}
    for name in names:
        rng = np.random.default_rng(1)
        cases = kernel_cases(kernels.get(name), args.batch, rng)
        for kind in ("classic", "arp"):
            cases[f"train step ({kind})"] = train_step(name, kind, args.batch, rng)
        for label, fn in cases.items():
            timings.setdefault(label, {})[name] = best_us(fn, args.repeat)
    print(f"{'operation':28s}" + "".join(f"{n + ' (us)':>14s}" for n in names)
          + ("   speedup" if len(names) > 1 else ""))
    for label, row in timings.items():
        line = f"{label:28s}" + "".join(f"{row[n]:14.1f}" for n in names)
        if len(names) > 1:
            line += f"   {row['numpy'] / row['cython']:7.2f}x"
        print(line)


if __name__ == "__main__":
    main()
