"""Scenario configuration, Monte Carlo orchestration and report emission."""
