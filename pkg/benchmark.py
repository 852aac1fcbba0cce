#!/usr/bin/env python3
"""
Performance benchmarking script for worldsys
"""
import json
import tempfile
import time
from pathlib import Path

from worldsys.analysis.calibration import calibrate_compact
from worldsys.analysis.fitting import fit_trend
from worldsys.cli.reproduce import run_reproduce
from worldsys.data import settings
from worldsys.data.loader import load_dataset
from worldsys.models.dynamics import simulate_kuznetsian
from worldsys.schemas.fit import Convention
from worldsys.schemas.simulation import Integrator, KremerParams


def timed(label: str, func, repeats: int = 3) -> dict:
    """Run ``func`` a few times and report wall-clock statistics"""
    print(f"\n📊 {label} ({repeats} runs)")
    times = []
    for i in range(repeats):
        start = time.time()
        try:
            func()
            elapsed = time.time() - start
            times.append(elapsed)
            print(f"  Run {i+1}: {elapsed*1000:.2f}ms")
        except Exception as e:
            print(f"  Run {i+1}: ERROR - {e}")

    if times:
        return {
            "label": label,
            "runs": len(times),
            "avg_ms": sum(times) / len(times) * 1000,
            "min_ms": min(times) * 1000,
            "max_ms": max(times) * 1000,
        }
    return {}


def main():
    """Run all benchmarks"""
    print("🚀 worldsys Performance Benchmark")
    print("=" * 50)

    dataset = load_dataset(settings.default_dataset_path())
    kuznetsian = KremerParams(alpha=0.5, r_tech=1.0, tech_coef=1e-5, a=1e-4,
                              g_bar=460.0, N0=100.0, T0=4600.0)

    cases = [
        ("Fit population k=1", lambda: fit_trend(dataset.population, k=1)),
        ("Fit GDP k=2", lambda: fit_trend(dataset.gdp, k=2)),
        ("Fit GDP free k", lambda: fit_trend(dataset.gdp, k="free", convention=Convention.INTEGER)),
        ("Calibrate compact model", lambda: calibrate_compact(dataset)),
        ("Kuznetsian RK4, 400 years",
         lambda: simulate_kuznetsian(kuznetsian, (0.0, 400.0), Integrator.RK4)),
    ]

    results = {
        "timestamp": time.strftime("%Y-%m-%d %H:%M:%S"),
        "benchmarks": {}
    }
    for label, func in cases:
        result = timed(label, func)
        if result:
            results["benchmarks"][label] = result
            print(f"\n✅ Avg: {result['avg_ms']:.2f}ms")

    with tempfile.TemporaryDirectory() as tmp:
        result = timed("Full reproduction", lambda: run_reproduce(
            settings.default_dataset_path(), Path(tmp), settings.extended_dataset_path()
        ), repeats=1)
        if result:
            results["benchmarks"]["reproduce"] = result

    # Summary
    print("\n" + "=" * 50)
    print("📈 Benchmark Summary")
    print("=" * 50)
    for label, result in results["benchmarks"].items():
        print(f"{label}: {result['avg_ms']:.2f}ms avg")

    with open("benchmark_results.json", "w") as f:
        json.dump(results, f, indent=2)

    print(f"\n✅ Results saved to benchmark_results.json")
    print("=" * 50)


if __name__ == "__main__":
    try:
        main()
    except KeyboardInterrupt:
        print("\n⚠️  Benchmark interrupted by user")
