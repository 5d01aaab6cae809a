# the logarithm: S(p^N) vanishes
index = (1,)
p = 3
ms = (1, 2, 3, 9, 27)
expected = {1: 1, 3: 0, 9: 0, 27: 0}
