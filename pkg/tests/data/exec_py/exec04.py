def gate(flag, level):
    if flag and level > 3:
        return 1
    return 0


active = True
print(gate(active, 5))
print(gate(active, 1))
print(gate(False, 9))
