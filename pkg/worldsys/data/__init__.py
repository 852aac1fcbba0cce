"""
Dataset loading and settings
"""
from worldsys.data.loader import (
    BENCHMARK_YEARS,
    load_dataset,
    derive_per_capita_series,
    derive_surplus_series,
    derive_growth_rates,
    subset_dataset,
    benchmark_subset,
)

__all__ = [
    "BENCHMARK_YEARS",
    "load_dataset",
    "derive_per_capita_series",
    "derive_surplus_series",
    "derive_growth_rates",
    "subset_dataset",
    "benchmark_subset",
]
