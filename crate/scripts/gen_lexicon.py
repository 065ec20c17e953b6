#!/usr/bin/env python3
"""Regenerates crates/core/data/lexicon.json from the keyword tiers below.

Each label lists keywords in three evidence tiers. A keyword may appear
under several labels; its entry then carries one weight per label.
"""
import json
import pathlib

STRONG, MEDIUM, WEAK = 0.8, 0.5, 0.3

TIERS = {
    # ---- topics ----
    "exercise": (
        "gym workout exercise exercised exercising jog jogging jogged treadmill yoga pilates "
        "lifting weightlifting marathon cardio crossfit squats pushups situps",
        "run running ran swim swimming swam cycling biked biking hike hiking hiked sprint "
        "stretching trainer reps laps fitness zumba spin rowing",
        "walk walked walking sweat sweaty muscles sore steps",
        ["work out", "worked out", "working out", "went running", "personal trainer", "lifted weights"],
    ),
    "family": (
        "family mom dad mother father parents sister brother sibling siblings grandma grandpa "
        "grandmother grandfather aunt uncle cousin cousins son daughter",
        "kids children mum mommy daddy niece nephew stepmom stepdad inlaws relatives wife "
        "husband baby toddler grandkids household",
        "home reunion thanksgiving christmas holidays",
        ["my mom", "my dad", "my sister", "my brother", "my parents", "my kids", "family dinner"],
    ),
    "food": (
        "food ate eat eating dinner lunch breakfast brunch meal meals cooking cooked cook "
        "recipe restaurant pizza",
        "snack snacks dessert cake burger pasta sushi tacos salad soup groceries bakery "
        "cafe chocolate icecream delicious tasty hungry",
        "coffee kitchen bread fruit",
        ["ice cream", "ate out", "take out", "eating out", "fast food", "grocery shopping"],
    ),
    "friends": (
        "friend friends friendship buddy buddies bestie pal pals roommate roommates companions mates",
        "hangout hung party partying sleepover bff classmates coworkers neighbor neighbors "
        "gang crew squad reunion texted chatted gossip",
        "together social visited catch guests",
        ["best friend", "hung out", "hanging out", "my friends", "my friend", "caught up", "game night"],
    ),
    "god": (
        "god church pray prayed prayer praying faith bible jesus worship mass sermon "
        "spiritual temple mosque synagogue",
        "religion religious lord pastor priest blessed blessing blessings scripture gospel "
        "devotional meditation meditated chapel heaven soul",
        "grace miracle sunday",
        ["thank god", "bible study", "went to church", "youth group", "quiet time", "said grace"],
    ),
    "health": (
        "health doctor hospital sick illness medicine medication surgery clinic therapy "
        "therapist dentist diagnosis symptoms",
        "pain headache migraine flu cold fever cough injury injured appointment nurse "
        "pharmacy prescription allergies checkup diabetes blood",
        "ill hurt hurts recovering recovery",
        ["check up", "mental health", "doctor appointment", "blood pressure", "feeling sick", "back pain"],
    ),
    "love": (
        "love boyfriend girlfriend date dating romance romantic partner fiance fiancee "
        "kiss kissed crush wedding anniversary",
        "husband wife spouse valentine relationship engaged proposal marriage married "
        "honeymoon sweetheart darling cuddled cuddle",
        "heart hug hugged flowers",
        ["date night", "my boyfriend", "my girlfriend", "my husband", "my wife", "in love", "my partner"],
    ),
    "recreation": (
        "movie movies film netflix game games gaming videogames concert hobby hobbies "
        "vacation trip travel beach park",
        "tv television show series music played play painting reading book novel fishing "
        "camping museum festival puzzle guitar piano",
        "fun relax weekend outdoors",
        ["video games", "board games", "watched tv", "went shopping", "day off", "road trip"],
    ),
    "school": (
        "school class classes exam exams test homework assignment professor teacher lecture "
        "college university semester course",
        "study studied studying quiz essay grade grades campus tutor thesis midterm "
        "finals syllabus project lab presentation",
        "learn learned learning students",
        ["final exam", "group project", "study group", "high school", "office hours", "due date"],
    ),
    "sleep": (
        "sleep slept sleeping insomnia nap napped naps asleep bed bedtime tired exhausted "
        "sleepy drowsy dream dreams",
        "overslept nightmare nightmares snoring rest rested restless awake woke wake alarm "
        "fatigue fatigued yawning pillow",
        "night morning early late",
        ["fell asleep", "no sleep", "woke up", "stayed up", "good night", "all nighter"],
    ),
    "work": (
        "work job boss office meeting meetings coworker coworkers deadline shift career "
        "manager client clients promotion",
        "project projects email emails presentation interview salary paycheck overtime "
        "colleague colleagues workplace business company team",
        "busy tasks schedule hired",
        ["at work", "my boss", "my job", "work day", "team meeting", "got promoted"],
    ),
    # ---- emotions ----
    "afraid": (
        "afraid scared fear frightened terrified fearful petrified panicked scary horror",
        "spooked creepy dread dreading threatened unsafe alarmed startled nervous shaking "
        "trembling phobia paranoid",
        "dark danger risk worried",
        ["scared of", "afraid of", "freaked out", "so scared", "terrified of"],
    ),
    "angry": (
        "angry mad furious rage raging livid pissed irate outraged enraged",
        "annoyed irritated hate hated resent resentful hostile fuming yelled yelling "
        "screamed argued argument fight",
        "unfair rude grr",
        ["so mad", "pissed off", "lost temper", "blew up", "fed up"],
    ),
    "anxious": (
        "anxious anxiety worried worry worrying nervous stressed stress stressful panic "
        "uneasy tense",
        "overwhelmed jittery restless apprehensive pressure overthinking racing edgy "
        "fretting uncertain concerned",
        "deadline exam interview",
        ["panic attack", "on edge", "stressed out", "freaking out", "so nervous"],
    ),
    "ashamed": (
        "ashamed shame shameful embarrassed embarrassing humiliated guilty guilt regret "
        "regretted",
        "disgrace mortified remorse sorry apologize apologized failure failed blamed "
        "stupid foolish humiliating",
        "mistake wrong",
        ["felt bad", "let down", "my fault", "messed up", "feel guilty"],
    ),
    "awkward": (
        "awkward awkwardly uncomfortable cringe cringey weird strange odd clumsy",
        "silence silent shy stammered stumbled fumbled blushed misunderstanding "
        "unfamiliar stranger strangers socially",
        "talk",
        ["small talk", "out of place", "felt weird", "so awkward", "weird vibe"],
    ),
    "bored": (
        "bored boring boredom dull tedious monotonous uneventful",
        "nothing repetitive routine meh bland slow lazy idle listless unmotivated "
        "stuck pointless",
        "same again ordinary",
        ["nothing to do", "same old", "killing time", "so bored", "dragged on"],
    ),
    "calm": (
        "calm peaceful relaxed relaxing serene tranquil quiet chill content",
        "rest restful cozy soothing mellow gentle meditation meditated breathe easy "
        "steady balanced",
        "slow lazy sunday",
        ["at peace", "took it easy", "laid back", "calm down", "slowed down"],
    ),
    "confused": (
        "confused confusing confusion puzzled unsure baffled bewildered lost perplexed",
        "unclear mixed wondering doubt doubts uncertain undecided misunderstood "
        "complicated complex questions",
        "why strange",
        ["not understand", "makes sense", "no idea", "mixed feelings", "not sure"],
    ),
    "disgusted": (
        "disgusted disgusting gross nasty revolting repulsive sickening vile yuck",
        "filthy dirty smelly stink stinks rotten grossed vomit puke awful horrible",
        "mess spoiled",
        ["grossed out", "made me sick", "so gross", "throw up", "threw up"],
    ),
    "excited": (
        "excited exciting thrilled pumped stoked eager thrill ecstatic",
        "amazing awesome adventure anticipation celebrate celebrating "
        "hyped elated giddy surprise",
        "new finally weekend",
        ["cannot wait", "looking forward", "so excited", "fired up", "big day"],
    ),
    "frustrated": (
        "frustrated frustrating frustration annoyed annoying irritating exasperated",
        "stuck ugh hassle struggle struggled struggling difficult hard impossible "
        "failed broken setback",
        "traffic delay late",
        ["fed up", "gave up", "not working", "went wrong", "so frustrating"],
    ),
    "happy": (
        "happy happiness glad joy joyful cheerful delighted smiling smiled laugh laughed",
        "great wonderful fantastic fun enjoyed enjoy lovely good nice blessed grateful "
        "thankful yay",
        "love best",
        ["made my day", "good day", "great time", "so happy", "had fun"],
    ),
    "jealous": (
        "jealous jealousy envy envious resent covet",
        "unfair rival compare compared comparing bitter spiteful possessive insecure "
        "lucky",
        "others",
        ["wish i", "left out", "not me", "so jealous", "envious of"],
    ),
    "nostalgic": (
        "nostalgic nostalgia memories memory remember remembered reminisce reminisced "
        "childhood",
        "old photos album throwback reunion hometown miss missed yesteryear "
        "reminded youth anniversary",
        "used past",
        ["old times", "good old", "back then", "when i", "used to"],
    ),
    "proud": (
        "proud pride accomplished accomplishment achievement achieved succeeded success "
        "nailed",
        "promoted promotion won win award finished completed graduated record "
        "milestone aced passed",
        "finally progress",
        ["proud of", "did it", "personal best", "pulled off", "got an"],
    ),
    "sad": (
        "sad sadness unhappy depressed depression cry cried crying tears lonely heartbroken",
        "miss missed grief grieving loss lost upset down gloomy hurt blue sorrow",
        "alone bad",
        ["broke down", "passed away", "felt down", "so sad", "broke up"],
    ),
    "satisfied": (
        "satisfied satisfying fulfilled fulfilling content accomplished productive",
        "done finished complete completed relieved relief pleased worthwhile gratifying "
        "rewarding enough",
        "good well",
        ["got done", "well spent", "paid off", "worth it", "checked off"],
    ),
    "surprised": (
        "surprised surprise surprising shocked shocking unexpected unexpectedly amazed "
        "astonished",
        "sudden suddenly wow stunned speechless unbelievable random startled "
        "unplanned unannounced",
        "turns",
        ["out of nowhere", "not expect", "turned out", "cannot believe", "caught off"],
    ),
}


EXTRA = {
    "afraid": "anxious horrified terror fright frightening intimidated insecure cowering hiding "
              "helpless vulnerable haunted jumpy uneasy",
    "angry": "angered infuriated infuriating bitter resentment snapped shouted cursed grudge "
             "outrage betrayed disrespected seething provoked offended heated",
    "anxious": "anxiously worrisome restlessness sweating jitters butterflies insomnia dreading "
               "scared unsettled frazzled antsy",
    "ashamed": "shamed embarrassment humiliation disappointed disappointing self conscious "
               "apologetic awful failing regretful exposed lied cheated",
    "awkward": "awkwardness uncomfortably embarrassed cringed tongue tied mumbled blank staring "
               "firstdate misunderstood flustered fidgeting ignored",
    "bored": "tedium yawn yawning sluggish unproductive aimless empty wasted drag dragging "
             "uninspired uninterested stale repetitive waiting",
    "calm": "calmly calmer peace serenity relax stillness harmony comfortable centered grounded "
            "zen unwind unwinding breeze",
    "confused": "perplexing lost unsure doubt doubtful vague baffling bewildering disoriented foggy muddled conflicted torn clueless "
                "puzzling mysterious dazed ambivalent",
    "disgusted": "vomit puke stench rotten filthy revolting disgust repulsed repelled nauseous nauseated sickened appalled slimy grimy "
                 "moldy rancid offensive icky",
    "excited": "exciting ecstatically revved raring psyched stoked hyped giddy ecstatic elated pumped excitement thrilling exhilarated exhilarating enthusiastic energized eager "
               "jazzed buzzing anticipating upcoming overjoyed",
    "frustrated": "frustrate aggravated aggravating irritated exhausting pointless hopeless "
                  "obstacle problems problem blocked helpless stalled",
    "happy": "happier happiest cheer cheerful joyous beaming grinning smile smiles laughing "
             "bliss sunny pleasant",
    "jealous": "coveted grudging jealousy envy greedy possessive bitterly envious insecurity unfair compare compared comparing coveting spiteful jealously envied envying begrudge covetous rivalry competitive resentful "
               "threatened possessiveness comparison favoritism outshined",
    "nostalgic": "nostalgically reminiscing remembering memorable sentimental wistful "
                 "longing yearning bygone vintage classic scrapbook",
    "proud": "proudest accomplishment milestone succeeded nailed aced prouder proudly triumph triumphant victory winning won achievements "
             "accomplishments honored recognition praised",
    "sad": "sadder saddest sorrowful miserable mourning mourn weeping wept devastated "
           "hopeless melancholy somber",
    "satisfied": "gratifying thankful relieved settled proudly satisfying satisfyingly gratified pleased rewarding worthwhile complete completed satisfaction content contentment fulfillment accomplishing efficient "
                 "productivity organized achieved successful nourished",
    "surprised": "omg gobsmacked blindsided unexpectedly startle whoa wow suddenly unbelievable sudden astonished amazed surprise surprising unexpected unexpectedly shocked stunned speechless surprisingly shock astonishing astounded startling unforeseen "
                 "bombshell twist wowed flabbergasted gasped jaw",
}


def main():
    table = {}

    def add(keyword, label, weight):
        keyword = " ".join(keyword.lower().split())
        if len(keyword.split()) > 2:
            return
        labels = table.setdefault(keyword, {})
        labels[label] = max(labels.get(label, 0.0), weight)

    for label, (strong, medium, weak, phrases) in TIERS.items():
        for w in strong.split():
            add(w, label, STRONG)
        for w in medium.split():
            add(w, label, MEDIUM)
        for w in weak.split():
            add(w, label, WEAK)
        for p in phrases:
            add(p, label, 0.7)
        for w in EXTRA.get(label, "").split():
            add(w, label, MEDIUM)
    entries = [
        {"keyword": k, "labels": [[l, w] for l, w in sorted(v.items())]}
        for k, v in sorted(table.items())
    ]
    out = pathlib.Path(__file__).resolve().parent.parent / "crates/core/data/lexicon.json"
    out.write_text(json.dumps({"version": 1, "entries": entries}, indent=1) + "\n")
    counts = {}
    for v in table.values():
        for l in v:
            counts[l] = counts.get(l, 0) + 1
    for label in TIERS:
        print(f"{label:12s} {counts.get(label, 0)}")


if __name__ == "__main__":
    main()
