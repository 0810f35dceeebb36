"""Tracker package: DeNG-VT and the centralised, individual and consensus baselines."""
