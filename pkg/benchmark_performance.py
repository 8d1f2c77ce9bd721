import sys
import time

from ramsey.bench import DEFAULT_FIXTURES, STAGES, run_bench
from ramsey.core.trees import path_tree


def benchmark(jobs=1, seed=0):
    """
    Runs the strict-mode fixture suite at n = 14400 with S = path:2, t = 2
    and prints a summary per fixture.
    """
    print(f"Running {len(DEFAULT_FIXTURES)} fixtures (strict, s=2, t=2, jobs={jobs})...")
    start_time = time.time()
    df = run_bench(DEFAULT_FIXTURES, path_tree(2), t=2, mode="strict", seed=seed, jobs=jobs)
    total = time.time() - start_time

    print("\n--- Outcomes ---")
    for _, row in df.iterrows():
        status = "verified" if row["verified"] else "NOT verified"
        print(f"{row['fixture']:<24} n={row.get('n')}  {row['outcome']:<14} {status}")
        if row["outcome"] == "error":
            print(f"  -> {row.get('error')}")

    print("\n--- Stage Times (seconds) ---")
    present = [s for s in STAGES if s in df.columns]
    if present:
        print(df[["fixture"] + present].to_string(index=False, float_format=lambda x: f"{x:.3f}"))

    print(f"\nPeak RSS: {df['peak_rss_mb'].max():.0f} MB")
    print(f"Wall Time: {total:.2f} seconds")

    failed = df[~df["verified"].astype(bool)]
    if failed.empty:
        print("All fixtures certified. (Pass)")
        return 0
    print(f"{len(failed)} fixture(s) without a verified certificate.")
    return 1


if __name__ == "__main__":
    jobs = int(sys.argv[1]) if len(sys.argv) > 1 else 1
    sys.exit(benchmark(jobs=jobs))
