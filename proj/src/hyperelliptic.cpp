namespace dpw {}
