"""Compilation of the GI cost to QUBO form and embedding on Chimera hardware."""
