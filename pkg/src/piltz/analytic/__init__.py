"""Analytic side: Laurent data at s = 1, zeta and L-values, scans and quadrature."""
