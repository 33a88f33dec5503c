"""
Benchmark: full canonical Betti table of a general genus-9 curve
"""
import argparse
import os
import sys
import time

# Add the project root to the Python path
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

import logging_config
from syzygy.cli.deps import compute
from syzygy.core.config import settings
from syzygy.schemas.betti import TableFamily
from syzygy.services.conjecture_service import conjecture_service


TIME_LIMIT_SECONDS = 600


def benchmark(seed: int, threads: int) -> bool:
    """Compute p <= 7, q <= 3 on the rational 9-nodal model and compare with the expected table"""
    print("Genus 9 canonical benchmark")
    print("=" * 50)
    print(f"Seed: {seed}")
    print(f"Threads: {threads}")
    print()

    args = argparse.Namespace(
        model="rational-nodal", genus=9, bundle="canonical", level=2, general_eta=False, degree=None,
        nodes=0, vars=4, d1=None, d2=None, prime=None, seed=seed, pmax=7, qmax=3,
        threads=threads, verify=False,
    )
    started = time.perf_counter()
    context, diagram, reports = compute(args)
    elapsed = time.perf_counter() - started

    print(diagram.render())
    print()
    print("Slowest strands:")
    for report in sorted(reports, key=lambda r: -r.seconds)[:5]:
        print(f"  d_{report.p},{report.q}: {report.rows}x{report.cols}, rank {report.rank_out}, {report.seconds:.1f}s")
    print()

    expected = conjecture_service.expected_table(TableFamily.CANONICAL_ODD, 9).diagram
    print(f"Matches expected table: {'yes' if expected == diagram else 'NO'}")
    print(f"Total: {elapsed:.1f}s (model seed {context.seed})")
    within = elapsed <= TIME_LIMIT_SECONDS
    print(f"Within {TIME_LIMIT_SECONDS // 60} minutes: {'yes' if within else 'NO'}")
    return within and expected == diagram


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--threads", type=int, default=settings.threads)
    options = parser.parse_args()
    logging_config.setup_logging()
    sys.exit(0 if benchmark(options.seed, options.threads) else 1)
