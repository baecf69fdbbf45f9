#!/usr/bin/env python3
"""Writes the bundled pizza-review fixture corpus.

The reviews are assembled from phrase banks with a fixed seed, so the file
is reproducible. It stands in for a real review dump with the same columns
(stars,text). Output: tests/fixtures/pizza_reviews.csv
"""

import argparse
import csv
import random
from pathlib import Path

OPENERS_POS = [
    "first time eating here and everything was so yummy!",
    "so i don't give out 5 stars lightly, but this place deserves it.",
    "my absolute favorite pizza spot in the city.",
    "we stopped in on a friday night and were not disappointed.",
    "this is probably my favorite pizza place in town.",
    "came here for lunch with coworkers and loved it.",
    "ordered delivery last night and it was fantastic.",
    "finally a pizza place that gets it right.",
    "been coming here for years and it never lets me down.",
    "great little neighborhood spot with a friendly vibe.",
]
OPENERS_NEG = [
    "i really wanted to like this place but it was a letdown.",
    "worst pizza i have had in a long time.",
    "not coming here again.",
    "we ordered delivery and regretted it.",
    "this place used to be good but it has gone downhill.",
    "stopped in for a quick slice and was not happy.",
    "i don't understand the good reviews for this place.",
    "came here with family and left disappointed.",
    "save your money and go somewhere else.",
    "very disappointing experience from start to finish.",
]
FOOD_POS = [
    "the crust was really tasty, crispy on the outside and chewy inside.",
    "the pepperoni pizza had the perfect amount of cheese and a great sauce.",
    "the margherita was fresh with basil and a bright tomato sauce.",
    "the garlic knots were warm and buttery.",
    "the mushroom pizza was loaded with fresh toppings.",
    "the thin crust was perfectly charred from the wood oven.",
    "the wings were crispy and the ranch was homemade.",
    "the salad was fresh and the dressing was delicious.",
    "the meatball sub was huge and very good.",
    "the sausage and pepper pizza was full of flavor.",
    "everything tasted fresh and made from scratch.",
    "the slices were big, hot and cheesy.",
    "the vegan pizza was surprisingly amazing.",
    "the calzone was stuffed with ricotta and came out piping hot.",
]
FOOD_NEG = [
    "the pizza was cold and the crust was soggy.",
    "the cheese was greasy and the sauce tasted like ketchup.",
    "the crust was burned on the bottom and raw in the middle.",
    "the toppings were stale and there were barely any of them.",
    "the wings were dry and way too salty.",
    "the salad was wilted and the dressing was warm.",
    "the pepperoni was nasty and the pizza was very greasy.",
    "the garlic knots were hard as a rock.",
    "the ingredients tasted stale and cheap.",
    "small portion size for the price, the slice was tiny.",
    "the sauce was bland and the cheese was rubbery.",
    "my pizza was missing half the toppings i ordered.",
    "the calzone was soggy and the ricotta tasted sour.",
    "very salty taste, i could not finish it.",
]
SERVICE_POS = [
    "the service was great and our server was super friendly.",
    "the staff were very accommodating even though we came in late.",
    "delivery was fast and the driver was polite.",
    "the owner came by to check on us, which was a nice touch.",
    "our waitress helped us choose and gave great recommendations.",
    "we were seated right away and the food came out quickly.",
    "the staff remembered our order from last time.",
]
SERVICE_NEG = [
    "bad customer service, the cashier was rude and ignored us.",
    "late delivery, it took over two hours to arrive.",
    "the manager was incompetent and did not care.",
    "we waited forever and nobody came to our table.",
    "they got our order wrong twice and would not fix it.",
    "the staff was angry and acted like we were bothering them.",
    "i asked for my money back and they refused.",
]
PLACE_POS = [
    "the dining room is cozy and clean.",
    "they have a nice patio for summer nights.",
    "prices are very reasonable for the quality.",
    "great beer selection to go with the pizza.",
    "the place is spotless and smells amazing.",
]
PLACE_NEG = [
    "the tables were dirty and sticky.",
    "the bathroom was disgusting.",
    "prices are way too high for what you get.",
    "the place smelled like old grease.",
    "it was loud and the floor was filthy.",
]
CLOSERS_POS = [
    "highly recommend!",
    "we will definitely be back.",
    "can't wait to come back and try more.",
    "five stars, no question.",
    "best pizza around, go here.",
    "already planning my next visit.",
]
CLOSERS_NEG = [
    "never again.",
    "would not eat here again.",
    "avoid this place.",
    "one star is generous.",
    "i will not be ordering from them again.",
    "very disappointed, not worth it.",
]
NEUTRAL_OPENERS = [
    "we ordered two large pies and some sides.",
    "stopped by after a game with a few friends.",
    "picked up a pizza on the way home from work.",
    "this is a small family run pizza shop.",
    "came in on a tuesday for dinner.",
    "ordered through the app for delivery.",
]
NEUTRAL_CLOSERS = [
    "that's about it.",
    "your mileage may vary.",
    "just my two cents.",
    "make of that what you will.",
]
MIXED = [
    "the crust was okay but nothing special.",
    "the service was fine, a little slow.",
    "prices are average for the area.",
    "it was a busy night so maybe that explains it.",
    "parking can be tricky on weekends.",
    "they have gluten free options.",
]


def review(rng: random.Random, positive: bool) -> str:
    opener, food, service, place, closer = (
        (OPENERS_POS, FOOD_POS, SERVICE_POS, PLACE_POS, CLOSERS_POS)
        if positive
        else (OPENERS_NEG, FOOD_NEG, SERVICE_NEG, PLACE_NEG, CLOSERS_NEG)
    )
    # A share of each class borrows phrasing from the other side so the
    # classes are separable but not trivially so.
    other_food, other_service = (FOOD_NEG, SERVICE_NEG) if positive else (FOOD_POS, SERVICE_POS)
    parts = [rng.choice(opener if rng.random() < 0.5 else NEUTRAL_OPENERS)]
    if rng.random() < 0.12:
        # Grudging reviews: the body mostly argues the other way.
        parts += rng.sample(other_food, 2)
        parts.append(rng.choice(food))
    else:
        parts += rng.sample(food, rng.randint(1, 3))
    if rng.random() < 0.45:
        parts.append(rng.choice(other_food))
    parts.append(rng.choice(service))
    if rng.random() < 0.3:
        parts.append(rng.choice(other_service))
    if rng.random() < 0.5:
        parts.append(rng.choice(place))
    if rng.random() < 0.6:
        parts += rng.sample(MIXED, rng.randint(1, 2))
    middle = parts[1:]
    rng.shuffle(middle)
    # Many reviewers simply stop after their last point instead of signing off.
    ending = []
    if rng.random() < 0.5:
        ending.append(rng.choice(closer if rng.random() < 0.6 else NEUTRAL_CLOSERS))
    return " ".join([parts[0], *middle, *ending])


def middling(rng: random.Random) -> str:
    return " ".join([rng.choice(FOOD_POS), rng.choice(FOOD_NEG), rng.choice(MIXED), rng.choice(MIXED)])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--per-class", type=int, default=324)
    ap.add_argument("--three-star", type=int, default=24)
    ap.add_argument("--seed", type=int, default=20201231)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "tests/fixtures/pizza_reviews.csv")
    args = ap.parse_args()

    rng = random.Random(args.seed)
    rows = []
    for _ in range(args.per_class):
        # Some reviewers' stars disagree with what they wrote.
        rows.append((rng.choice([4, 5, 5]), review(rng, rng.random() >= 0.06)))
        rows.append((rng.choice([1, 1, 2]), review(rng, rng.random() < 0.06)))
    for _ in range(args.three_star):
        rows.append((3, middling(rng)))
    rng.shuffle(rows)

    args.out.parent.mkdir(parents=True, exist_ok=True)
    with args.out.open("w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["stars", "text"])
        w.writerows(rows)


if __name__ == "__main__":
    main()
