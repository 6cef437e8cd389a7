"""Builtin ordering heuristics, each module registers its class with @heuristic"""
