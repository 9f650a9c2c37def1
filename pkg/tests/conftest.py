"""Shared test configuration.

Hypothesis runs derandomized so the suite is reproducible run to run;
the generators still cover the same structured space.
"""

from hypothesis import HealthCheck, settings

settings.register_profile(
    "repro",
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
    deadline=None,
)
settings.load_profile("repro")
