"""
Tables behind the reliability/reversibility figures and the strength sweep.

Figure curves are functions of d_rel only: every (c0, eta) pair with the same
d_rel lands on the same point, so no c0 is needed to draw them.
"""

import json
import logging
import os.path as path
import numpy as np
from qrevsim.Errors import InvalidParameter
from qrevsim.analysis.closed_forms import mutual_information, tradeoff_point, optimal_eta
from qrevsim.analysis.TradeoffPoint import TradeoffPoint
from qrevsim.figures.FigureTable import FigureTable

K_VALUES = (1, 10, 100)
FIGURE_FILES = {'fig3_tradeoff': 'fig3.csv', 'fig4_fine': 'fig4.csv', 'fig5_mutual_info': 'fig5.csv'}
SCHEMA_VERSION = 1

logger = logging.getLogger("qrevsim")


def _reliability_grid(grid_size: int) -> np.ndarray:
    if grid_size < 2:
        raise InvalidParameter(f"Grid size must be at least 2, got {grid_size}")
    return np.linspace(0.0, 1.0, grid_size)


def _d_rev(d_rel: np.ndarray, k: float) -> np.ndarray:
    """Largest d_rev allowed by K d_rev^2 + d_rel^2 = 1."""
    return np.sqrt((1.0 - d_rel) * (1.0 + d_rel) / k)


def tradeoff_table(grid_size: int = 201, k_values: tuple = K_VALUES) -> FigureTable:
    d_rel = _reliability_grid(grid_size)
    columns = {'d_rel': d_rel}
    for k in k_values:
        columns[f"d_rev_K{k}"] = _d_rev(d_rel, k)
    return FigureTable('fig3_tradeoff', columns, {'parameterization': 'd_rel', 'k_values': list(k_values),
                                         'grid_size': grid_size,
                                         'd_rev_intercepts': [1.0 / np.sqrt(k) for k in k_values],
                                         'admissible_d_rel': [0.0, 1.0]})


def fine_table(grid_size: int = 201, k_values: tuple = K_VALUES) -> FigureTable:
    d_rel = _reliability_grid(grid_size)
    columns = {'d_rel': d_rel}
    for k in k_values:
        columns[f"fine_K{k}"] = 1.0 - 0.5 * (_d_rev(d_rel, k) + d_rel)
    return FigureTable('fig4_fine', columns, {'parameterization': 'd_rel', 'k_values': list(k_values),
                                         'grid_size': grid_size, 'fine': '1 - (d_rev + d_rel)/2'})


def mutual_information_table(grid_size: int = 201) -> FigureTable:
    d_rel = _reliability_grid(grid_size)
    information = np.array([mutual_information((1.0 - value) / 2.0) for value in d_rel])
    return FigureTable('fig5_mutual_info', {'d_rel': d_rel, 'mutual_info': information},
                       {'parameterization': 'd_rel', 'grid_size': grid_size, 'units': 'bits'})


def write_figures(out_dir: str, grid_size: int = 201) -> list:
    """Writes fig3.csv, fig4.csv, fig5.csv and their metadata in figures.json."""
    tables = [tradeoff_table(grid_size), fine_table(grid_size), mutual_information_table(grid_size)]
    files = []
    for table in tables:
        file_name = path.join(out_dir, FIGURE_FILES[table.name])
        table.write_csv(file_name)
        files.append(file_name)
        logger.info("Wrote %s with %d rows", file_name, len(table))
    metadata_file = path.join(out_dir, "figures.json")
    with open(metadata_file, 'w', newline='\n') as out_f:
        json.dump({'schema_version': SCHEMA_VERSION,
                   'figures': {table.name: table.metadata for table in tables}}, out_f, indent=4, sort_keys=True)
        out_f.write('\n')
    files.append(metadata_file)
    return files


def sweep_table(c0: float, grid_size: int, include_optimum: bool = False) -> FigureTable:
    """:class:`TradeoffPoint` fields over a uniform eta grid on [0,1]."""
    etas = list(np.linspace(0.0, 1.0, grid_size)) if grid_size > 1 else [0.0]
    if include_optimum:
        eta_star, _, clamped = optimal_eta(c0)
        if not clamped and eta_star not in etas:
            etas = sorted(etas + [eta_star])
    points = [tradeoff_point(c0, float(eta)) for eta in etas]
    data = np.array([point.values() for point in points])
    names = TradeoffPoint.header().split(',')
    return FigureTable('sweep', {name: data[:, index] for index, name in enumerate(names)},
                       {'c0': c0, 'grid_size': grid_size})
