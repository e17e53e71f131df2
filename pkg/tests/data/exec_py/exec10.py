def clamp(v, low, high):
    if v < low:
        return low
    else:
        if v > high:
            return high
    return v


total = 0
total += clamp(12, 0, 10)
total += clamp(-3, 0, 10)
total += clamp(5, 0, 10)
print(total)
print(clamp(7, 1, 6))
