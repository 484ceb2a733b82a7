"""
Benchmark for the 2D-to-1D embedding matcher.
Reports the embedding/OPT distance ratio and wall time on seeded clustered
instances for each embedding method, then the time ratio when the instance size doubles.
"""

import argparse
import os
import sys
import time

import numpy as np

sys.path.append(os.path.join(os.path.dirname(__file__), ".."))

from src.embed2d import EmbeddingConfig, clustered_instance, match_via_embedding
from src.utils.logger import get_logger

logger = get_logger("benchmark")


def run_benchmark(n_users=200, n_servers=400, instances=20, seed=0, method="hierarchical"):
    """Mean ratio and OPT mean over seeded clustered instances."""
    logger.info(
        f"Embedding {instances} clustered instances of {n_users}/{n_servers} ({method})..."
    )
    config = EmbeddingConfig(method=method)
    ratios, opt_means, embed_means = [], [], []

    start_time = time.time()
    for i in range(instances):
        match = match_via_embedding(clustered_instance(n_users, n_servers, seed + i), config)
        ratios.append(match.ratio)
        opt_means.append(match.opt_mean)
        embed_means.append(match.embed_mean)
    duration = time.time() - start_time

    logger.info(f"OPT mean distance:       {np.mean(opt_means):.4f}")
    logger.info(f"Embedding mean distance: {np.mean(embed_means):.4f}")
    logger.info(f"Mean ratio:              {np.mean(ratios):.3f} (max {np.max(ratios):.3f})")
    logger.info(f"Wall time:               {duration:.2f}s")
    return float(np.mean(ratios)), float(np.mean(opt_means)), duration


def scaling_check(n_users=200, seed=0):
    """Wall-time ratio when the instance size doubles at fixed density."""
    timings = []
    for n in (n_users, 2 * n_users):
        start_time = time.time()
        match_via_embedding(clustered_instance(n, 2 * n, seed))
        timings.append(time.time() - start_time)
    ratio = timings[1] / timings[0]
    logger.info(f"Doubling n: {timings[0]:.2f}s -> {timings[1]:.2f}s (x{ratio:.2f})")
    return ratio


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Benchmark the embedding matcher")
    parser.add_argument("--users", type=int, default=200)
    parser.add_argument("--servers", type=int, default=400)
    parser.add_argument("--instances", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--methods", nargs="+", default=["hierarchical", "spectral"])
    args = parser.parse_args()

    for method in args.methods:
        run_benchmark(args.users, args.servers, args.instances, args.seed, method)
    scaling_check(args.users, args.seed)
