def countdown(start):
    steps = 0
    for k in range(start, 0, -1):
        steps += 1
    return steps


def parity(n):
    if n % 2 == 0:
        return "even"
    else:
        return "odd"


print(countdown(4))
print(parity(countdown(4)))
print(parity(7))
