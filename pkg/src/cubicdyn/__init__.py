"""Exact dynamics on the character varieties of Painlevé V and VI."""
