def scale(base):
    z = base + base
    factor = 2
    z += factor
    return z


def label(v):
    if v >= 10:
        return "big"
    elif v >= 5:
        return "mid"
    else:
        return "tiny"


print(scale(4))
print(label(scale(4)))
print(label(3))
