"""
World-system growth models: trend fitting, simulation and statistics
"""
__version__ = "1.0.0"
