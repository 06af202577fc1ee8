# curvmix test suite
