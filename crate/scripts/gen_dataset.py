"""Writes the labeled evaluation fixture: 20 days, three sub-entries each."""
import json
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "crates/core/data/fixtures/dataset.json"

DAYS = [
    [
        ("Ran five miles before work and beat my best time", ["exercise"], ["proud", "excited"]),
        ("Long meeting with my boss about the deadline", ["work"], ["anxious"]),
        ("Cooked pasta and ate it on the couch", ["food"], ["calm"]),
    ],
    [
        ("My sister called and we laughed for an hour", ["family"], ["happy"]),
        ("Failed the chemistry quiz even though I studied", ["school"], ["sad", "frustrated"]),
        ("Could not fall asleep until three", ["sleep"], ["anxious"]),
    ],
    [
        ("Went to church with grandma and prayed together", ["god", "family"], ["calm"]),
        ("Lunch with friends at the new taco place", ["friends", "food"], ["happy"]),
        ("Doctor said my blood pressure is too high", ["health"], ["afraid"]),
    ],
    [
        ("Date night with my girlfriend, she surprised me with tickets", ["love"], ["surprised", "happy"]),
        ("Spent the afternoon hiking the trail by the lake", ["recreation"], ["calm"]),
        ("Coworker took credit for my project", ["work"], ["angry"]),
    ],
    [
        ("Missed the bus and was late for class", ["school"], ["frustrated"]),
        ("Played video games all evening", ["recreation"], ["bored"]),
        ("Overslept and felt groggy all morning", ["sleep"], []),
    ],
    [
        ("Got promoted today after two years of hard work", ["work"], ["proud", "excited"]),
        ("Celebrated with a fancy dinner", ["food"], ["happy"]),
        ("Called mom to tell her the news", ["family"], ["happy"]),
    ],
    [
        ("Flu again, stayed in bed with a fever", ["health"], ["sad"]),
        ("My roommate ate my leftovers without asking", ["friends", "food"], ["angry"]),
        ("Read a book and had tea", ["recreation"], ["calm"]),
    ],
    [
        ("Said something awkward at the party and everyone stared", ["friends"], ["awkward", "ashamed"]),
        ("Looked at old photos from high school", ["school"], ["nostalgic"]),
        ("Meditated for twenty minutes before bed", ["sleep"], ["calm"]),
    ],
    [
        ("Boyfriend forgot our anniversary", ["love"], ["sad", "angry"]),
        ("Gym was packed so I lifted at home", ["exercise"], ["frustrated"]),
        ("Finished the report on time", ["work"], ["satisfied"]),
    ],
    [
        ("Brother got engaged, the whole family is thrilled", ["family", "love"], ["happy", "excited"]),
        ("The sermon today made me think about forgiveness", ["god"], ["calm"]),
        ("Ate way too much cake", ["food"], ["disgusted"]),
    ],
    [
        ("The exam questions made no sense", ["school"], ["confused", "anxious"]),
        ("Best friend moved to another city", ["friends"], ["sad"]),
        ("Slept nine hours and woke up rested", ["sleep"], ["happy"]),
    ],
    [
        ("Yoga class in the morning felt great", ["exercise", "health"], ["calm"]),
        ("Client yelled at me over the phone", ["work"], ["angry", "afraid"]),
        ("Grabbed pizza with coworkers after the shift", ["food", "work"], ["happy"]),
    ],
    [
        ("My ex posted photos with someone new", ["love"], ["jealous", "sad"]),
        ("Went swimming at the beach", ["recreation", "exercise"], ["happy"]),
        ("Dad is in the hospital for surgery", ["family", "health"], ["afraid", "anxious"]),
    ],
    [
        ("Nothing happened at the office today", ["work"], ["bored"]),
        ("Watched a movie with friends", ["friends", "recreation"], ["happy"]),
        ("Prayed for my cousin who is sick", ["god", "family"], ["sad"]),
    ],
    [
        ("Got an A on my essay", ["school"], ["proud"]),
        ("Tried sushi for the first time", ["food"], ["surprised"]),
        ("Insomnia again, watched the ceiling all night", ["sleep"], ["frustrated"]),
    ],
    [
        ("Basketball game with the guys, we won", ["exercise", "friends"], ["excited"]),
        ("Parents argued at dinner", ["family"], ["sad", "anxious"]),
        ("Lost my keys and my wallet", [], ["frustrated", "confused"]),
    ],
    [
        ("Volunteered at church on Sunday", ["god"], ["satisfied"]),
        ("Skipped breakfast and felt dizzy", ["health", "food"], []),
        ("Wife made me breakfast in bed", ["love", "food"], ["happy", "surprised"]),
    ],
    [
        ("Presentation at school went well", ["school"], ["proud", "satisfied"]),
        ("Neighbor's dog barked all night so I barely slept", ["sleep"], ["angry"]),
        ("Painted for a few hours in the garden", ["recreation"], ["calm"]),
    ],
    [
        ("Friend forgot my birthday", ["friends"], ["sad"]),
        ("Overtime again and no thanks from my manager", ["work"], ["frustrated"]),
        ("Back pain from sitting all day", ["health"], []),
    ],
    [
        ("Visited my childhood home with my mom", ["family"], ["nostalgic", "happy"]),
        ("Ran into my old teacher at the store", ["school"], ["surprised"]),
        ("Quiet evening, just tea and a candle", [], ["calm"]),
    ],
]


def main():
    assert len(DAYS) == 20 and all(len(d) == 3 for d in DAYS)
    entries = [
        {
            "id": f"day-{i + 1:02}",
            "sub_entries": [{"text": t, "topics": ts, "emotions": es} for t, ts, es in day],
        }
        for i, day in enumerate(DAYS)
    ]
    OUT.write_text(json.dumps(entries, indent=1) + "\n")


if __name__ == "__main__":
    main()
