index = (1, 2)
p = 3
ms = (0, 3, 7, 9)
seed = 12
