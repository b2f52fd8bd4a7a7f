"""Census of regular open algebras of random finite preorders.

Counts carrier sizes and checks the embedding and algebra laws on each.
"""
import argparse
import random
from collections import Counter
from dataclasses import dataclass

from setforce.completion import ba_laws_check, ro_algebra, verify_embedding
from setforce.poset import random_poset


@dataclass
class Config:
    samples: int = 300
    max_size: int = 8
    density: float = 0.25
    seed: int = 0


def run(cfg: Config):
    rng = random.Random(cfg.seed)
    sizes, failures = Counter(), []
    for _ in range(cfg.samples):
        P = random_poset(rng, rng.randint(1, cfg.max_size), cfg.density)
        A = ro_algebra(P)
        sizes[len(A.atoms())] += 1
        if not (verify_embedding(P, A).ok and ba_laws_check(A).ok):
            failures.append(P)
    return sizes, failures


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(Config()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=type(default), default=default)
    cfg = Config(**vars(ap.parse_args()))
    sizes, failures = run(cfg)
    print("atoms  count  carrier")
    for k in sorted(sizes):
        print(f"{k:>5}  {sizes[k]:>5}  {2 ** k}")
    print(f"failures: {len(failures)}")


if __name__ == "__main__":
    main()
