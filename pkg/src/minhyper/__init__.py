"""Exact verification of the moving-frame identities for minimal
hypersurfaces in S^5, plus the isoparametric model lab."""

__version__ = "0.1.0"
