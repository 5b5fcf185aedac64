"""pitwidth: exact width parameters by positive-instance driven graph searching."""
