def fold(items):
    acc = 0
    for item in items:
        if item < 0:
            acc -= item
        else:
            acc += item
    return acc


row = [3, -2, 5, -1]
print(fold(row))
print(fold([]))
print(len(row))
