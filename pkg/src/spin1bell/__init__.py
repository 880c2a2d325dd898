"""Multipartite Bell nonlocality in the spin-1 XXZ chain with on-site anisotropy."""
