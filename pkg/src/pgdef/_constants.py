"""Defaults and environment variable names shared across pgdef."""

from __future__ import annotations

DEFAULT_MAX_COSETS = 2**16
DEFAULT_H2_ORDER_CEILING = 32

# Matrices sparser than this go through the sparse elimination engine
SPARSE_DENSITY_THRESHOLD = 0.10

# Chain spaces up to this rank use the kernel-basis route in homology_quotient
KERNEL_ROUTE_MAX_RANK = 100

# Exhaustive associativity checks up to this order, sampling above it
EXHAUSTIVE_ASSOCIATIVITY_ORDER = 64
ASSOCIATIVITY_SAMPLES = 20_000

REPORT_SCHEMA_VERSION = "1"

ENV_MAX_COSETS = "PGDEF_MAX_COSETS"
ENV_H2_CEILING = "PGDEF_H2_CEILING"
ENV_STRATEGY = "PGDEF_STRATEGY"
