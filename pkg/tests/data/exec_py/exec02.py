def classify(n):
    # bucket the value
    if n == 0:
        return "zero"
    else:
        if n < 10:
            return "small"
    return "large"


print(classify(0))
print(classify(4))
print(classify(40))
