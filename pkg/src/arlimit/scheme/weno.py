from ._weno_py import weno5_left


def weno5_reconstruct(stencil) -> float:
    """WENO5-JS value at the right face of the centre cell of a 5-point stencil.

    The stencil is ordered upwind to downwind: (v[i-2], v[i-1], v[i], v[i+1], v[i+2]).
    """
    vals = [float(v) for v in stencil]
    if len(vals) != 5:
        raise ValueError(f"WENO5 needs 5 values, got {len(vals)}")
    return float(weno5_left(*vals))
