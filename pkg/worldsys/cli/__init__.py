from . import fit, simulate, stats, reproduce
