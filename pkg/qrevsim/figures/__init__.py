from qrevsim.figures.FigureTable import FigureTable
from qrevsim.figures.tables import tradeoff_table, fine_table, mutual_information_table, write_figures, \
    sweep_table, K_VALUES, SCHEMA_VERSION, FIGURE_FILES
