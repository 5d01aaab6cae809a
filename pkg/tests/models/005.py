index = (2, 1)
p = 5
ms = (5, 11, 25)
seed = 3
