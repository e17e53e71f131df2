def bounded_sum(stop):
    acc = 0
    idx = 0
    while idx < stop:
        acc += idx
        idx += 1
    unused = 99
    return acc


value = bounded_sum(5)
print(value)
print(bounded_sum(0))
