"""Fusion-system obstruction toolkit for abelian p-group modules."""
