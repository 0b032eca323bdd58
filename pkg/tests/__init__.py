# laghardy test suite
