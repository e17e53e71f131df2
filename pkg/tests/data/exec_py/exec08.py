def check(n: int) -> bool:
    ok = True
    if n < 0:
        ok = False
    return ok


def to_bit(flag):
    if flag:
        return 1
    return 0


print(to_bit(check(5)))
print(to_bit(check(-2)))
print(to_bit(check(0)))
