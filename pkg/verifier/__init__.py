"""
Verification of the curvature/mixing inequalities on chains.

Only the report types are exported here so lower layers can import them
without pulling in the suite; use ``verifier.suite`` and ``verifier.checks``
directly.

Updates: v0.1.0 - 2026-10-16 - Reports, per-chain context, checks, supermartingale simulation, suite runner.
"""

from verifier.report import SCHEMA_VERSION, InequalityReport, Status, SuiteReport

__all__ = ["SCHEMA_VERSION", "InequalityReport", "Status", "SuiteReport"]
