from qrevsim.cmd import launch

launch()
