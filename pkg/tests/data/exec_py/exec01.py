def tally(limit):
    total = 0
    for i in range(limit):
        total += i
    return total


def pick(a, b):
    if a < b:
        return b
    else:
        return a


count = tally(6)
print(count)
print(pick(count, 9))
print(pick(3, 2))
