"""Tables and JSON payloads for convergent listings and verification rows"""

import json
from fractions import Fraction

import numpy as np
import pandas as pd

SCHEMA_VERSION = 1


def format_value(value):
    """JSON fallback: a Fraction as "p/q" (always with a denominator), numpy
    scalars as their Python value, anything else via str."""
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def convergent_frame(table):
    """One row per ConvergentTriple, seed row included.

    Args:
        table (list): Output of ``convergent_table``

    Returns:
        Pandas Dataframe: n, digit, the three convergents and the signs
    """
    rows = []
    for t in table:
        rows.append(
            {
                "n": t.n,
                "a": t.digit.a if t.digit else None,
                "eps": t.digit.eps if t.digit else None,
                "principal": f"{t.p}/{t.q}",
                "sub": f"{t.p_sub}/{t.q_sub}",
                "pseudo": f"{t.p_pseudo}/{t.q_pseudo}",
                "eps_prod": t.eps_prod,
                "adjacent_det": t.adjacent_det,
                "sub_pseudo_det": t.sub_pseudo_det,
            }
        )
    df = pd.DataFrame(rows)
    df["a"] = df["a"].astype("Int64")
    df["eps"] = df["eps"].astype("Int64")
    df["adjacent_det"] = df["adjacent_det"].astype("Int64")
    return df


def render_frame(df, fmt="tsv"):
    """Text form of a Dataframe: tab separated or aligned columns."""
    if fmt == "tsv":
        return df.to_csv(sep="\t", index=False).rstrip("\n")
    return df.to_string(index=False)


def payload(**fields):
    return {"schema": SCHEMA_VERSION, **fields}


def dumps(obj):
    return json.dumps(obj, default=format_value)
