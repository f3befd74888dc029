"""Exponent catalog, Omega constants, Srinivasan balancing and exponential sums."""
